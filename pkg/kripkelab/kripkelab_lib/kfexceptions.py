"""
Exceptions raised by the kripkelab library.

Every error stores the values that caused it, so callers (the CLI, the
experiment suites) can report them without parsing messages.
"""


class KFexception(Exception):
    """
    Base exception class for kripkelab.
    """
    pass


class KFFrameError(KFexception):
    def __init__(self, detail):  # IGNORE:W0231
        self.detail = detail

    def __str__(self):
        return 'Malformed frame: %s.' % self.detail


class KFAlphabetError(KFexception):
    def __init__(self, names, detail):  # IGNORE:W0231
        self.names = names
        self.detail = detail

    def __str__(self):
        return 'Bad modality names %r: %s.' % (self.names, self.detail)


class KFWorldRangeError(KFexception):
    def __init__(self, world, n):  # IGNORE:W0231
        self.world = world
        self.n = n

    def __str__(self):
        return 'World %r is outside the domain 0..%d.' % (self.world,
                                                          self.n - 1)


class KFSizeMismatchError(KFexception):
    def __init__(self, left, right):  # IGNORE:W0231
        self.left = left
        self.right = right

    def __str__(self):
        return 'World counts differ: %d and %d.' % (self.left, self.right)


class KFParseError(KFexception):
    def __init__(self, text, position, detail):  # IGNORE:W0231
        self.text = text
        self.position = position
        self.detail = detail

    def __str__(self):
        return 'Syntax error at position %d in %r: %s.' % (
            self.position, self.text, self.detail)


class KFFormulaError(KFexception):
    def __init__(self, formula, detail):  # IGNORE:W0231
        self.formula = formula
        self.detail = detail

    def __str__(self):
        return 'Cannot use formula %s: %s.' % (self.formula, self.detail)


class KFValidationError(KFexception):
    def __init__(self, argname, argvalue):  # IGNORE:W0231
        self.argname = argname
        self.argvalue = argvalue

    def __str__(self):
        return ('Invalid value, %s, for argument "%s".' % (self.argvalue,
                                                          self.argname))


class KFPartitionError(KFexception):
    def __init__(self, blocks, detail):  # IGNORE:W0231
        self.blocks = blocks
        self.detail = detail

    def __str__(self):
        return 'Not a partition (%s): %r.' % (self.detail, self.blocks)


class KFCapExceededError(KFexception):
    def __init__(self, needed, cap):  # IGNORE:W0231
        self.needed = needed
        self.cap = cap

    def __str__(self):
        return ('Valuation enumeration needs %d bits but the cap is %d;'
                ' shrink the instance or raise --cap.' % (self.needed,
                                                         self.cap))


class KFBudgetExceededError(KFexception):
    def __init__(self, needed, budget):  # IGNORE:W0231
        self.needed = needed
        self.budget = budget

    def __str__(self):
        return 'Enumeration of %d candidates exceeds the budget of %d.' % (
            self.needed, self.budget)


class KFPreconditionError(KFexception):
    def __init__(self, operation, witness):  # IGNORE:W0231
        self.operation = operation
        self.witness = witness

    def __str__(self):
        return 'Precondition of %s fails, witness: %r.' % (self.operation,
                                                           self.witness)


class KFInvariantError(KFexception):
    def __init__(self, operation, witness):  # IGNORE:W0231
        self.operation = operation
        self.witness = witness

    def __str__(self):
        return 'Guarantee of %s violated, witness: %r.' % (self.operation,
                                                           self.witness)
