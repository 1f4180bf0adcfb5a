"""
Contributions to kripkelab that are considered useful enough to be
distributed but are not necessarily considered part of kripkelab core.
"""
