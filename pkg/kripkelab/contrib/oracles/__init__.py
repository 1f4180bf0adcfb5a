"""
Brute-force oracles: every construction of kripkelab recomputed straight from
its definition, with plain Python sets and loops, for cross-checking the
library at desk scale.

Relations are sets of ``(source, target)`` pairs and partitions are lists of
frozensets, so nothing here shares code with the numpy implementations.
"""
