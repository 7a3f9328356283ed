"""Faultline - fault-tolerant resource estimates for quantum chemistry"""

__version__ = "1.0.0"
__license__ = "MIT"
