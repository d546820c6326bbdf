"""
Legal Network Analyzer - network analysis of evolving legislative corpora
Builds hierarchy, reference and sequence graphs of statute snapshots, clusters them
and follows the clusters across years
"""

__version__ = "0.1.0"
