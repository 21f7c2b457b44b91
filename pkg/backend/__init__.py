# AlgInt Certify Backend
# Instance schemas and the dispatcher that runs them

__version__ = "1.0.0"
__author__ = "AlgInt Certify Team"
