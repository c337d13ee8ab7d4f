"""
Real curves, symbolic line bundles and presentations of real ruled manifolds.
"""
