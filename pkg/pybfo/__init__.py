"""
pybfo checks how realizable entities (dispositions and roles) are grounded in
the qualities of their bearers, over worlds typed against a BFO taxonomy.
"""

__version__ = "0.1.0"
