"""
Deformation-class keys, normal forms, realization and the move-graph oracle.
"""
