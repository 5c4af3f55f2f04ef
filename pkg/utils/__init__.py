"""
Algorithm modules for the planar contraction-decomposition toolkit
"""
