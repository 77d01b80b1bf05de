"""
Test package for frobtwist.
"""
