"""
This package contains the library modules of kripkelab: frames and
relations, formulas, semantics, tuned partitions, frame sums and the defect
construction.
"""
