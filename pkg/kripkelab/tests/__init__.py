"""
tests for kripkelab
"""
