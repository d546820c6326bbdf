from setuptools import setup, find_packages

setup(
    name="legal-network-analyzer",
    version="0.1.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    package_data={
        "legal_network_analyzer.refextract": ["profiles/*.json"],
        "legal_network_analyzer": ["data/minicorpus/*.toml", "data/minicorpus/*/*.json", "data/minicorpus/*/*.xml"],
    },
    install_requires=[
        "annotated-types>=0.7.0",
        "joblib>=1.4.2",
        "lxml>=5.3.0",
        "markdown-it-py>=3.0.0",
        "mdurl>=0.1.2",
        "networkx>=3.4.2",
        "numpy>=2.2.1",
        "pydantic>=2.10.4",
        "pydantic_core>=2.27.2",
        "rapidfuzz>=3.11.0",
        "requests>=2.32.3",
        "rich>=13.9.4",
        "scikit-learn>=1.6.0",
        "scipy>=1.15.0",
        "urllib3>=2.3.0",
        "tomli>=2.0.1; python_version < '3.11'",
    ],
    extras_require={
        "test": ["pytest>=8.3.4"],
    },
    entry_points={
        "console_scripts": [
            "legal-network-analyzer=legal_network_analyzer.main:main",
        ],
    },
    author="Legal Network Analyzer",
    description="Network analysis of evolving legislative corpora: reference graphs, map-equation clustering and cluster families",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    keywords="legislation, statutes, citation-network, infomap, map-equation, network-analysis",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
)
