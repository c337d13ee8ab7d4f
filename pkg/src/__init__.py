"""
ruledforms - deformation classes of real ruled manifolds from combinatorial presentations.
"""
