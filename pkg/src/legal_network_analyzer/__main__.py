"""
Main entry point for running legal_network_analyzer as a module
"""
from .main import main

if __name__ == '__main__':
    main()
