"""sklab: elliptic quadratic-relation spaces and their classical limits."""

__version__ = "0.1.0"
