class TauLoopException(Exception):
    """Module base exception class"""
    def __init__(self, message):
        super(TauLoopException, self).__init__(message)


class IndexOutOfRange(TauLoopException):
    """A sparse vector refers to a coordinate beyond the ambient dimension"""
    def __init__(self, index, dim):
        super(IndexOutOfRange, self).__init__(
            'index {} is out of range for ambient dimension {}'.format(index, dim))


class AmbientMismatch(TauLoopException):
    """Two ideals were combined which do not live in the same algebra"""
    def __init__(self, first, second):
        super(AmbientMismatch, self).__init__(
            'ideals belong to different algebras [{}] and [{}]'.format(first, second))


class NotAnIdeal(TauLoopException):
    """A subspace was used as an ideal but is not closed under multiplication"""
    def __init__(self, basis_index, row):
        super(NotAnIdeal, self).__init__(
            'subspace is not an ideal: e{} times row {} leaves the span'.format(basis_index, row))


class NotSemisimple(TauLoopException):
    """A semisimple algebra was required but the nilradical is nonzero"""
    def __init__(self, rank):
        super(NotSemisimple, self).__init__(
            'algebra has a nilradical of dimension {}, take the quotient by the radical first'.format(rank))


class SplitFieldRequired(TauLoopException):
    """A multiplication operator does not split over the rationals"""
    def __init__(self, element, factor):
        super(SplitFieldRequired, self).__init__(
            'multiplication by {} has the irreducible factor {} of degree > 1 over QQ'.format(element, factor))


class ImproperIdeal(TauLoopException):
    """Quotient by the whole algebra was requested"""
    def __init__(self):
        super(ImproperIdeal, self).__init__('cannot form a quotient by the whole algebra')


class BadParams(TauLoopException):
    """Parameters supplied to a constructor are invalid"""
    pass


class AlgebraMismatch(TauLoopException):
    """Elements over different coefficient algebras were combined"""
    pass


class TruncationError(TauLoopException):
    """The result of an action would land outside the truncation box"""
    def __init__(self, term, target, box):
        super(TruncationError, self).__init__(
            'action of {} reaches offset {} outside box {}'.format(term, target, box))
        self.term = term
        self.target = target


class BoxTooSmall(TauLoopException):
    """A requested offset is not inside the truncation box"""
    def __init__(self, offset, box):
        super(BoxTooSmall, self).__init__('offset {} does not lie in box {}'.format(offset, box))


class InputError(TauLoopException):
    """Malformed user input, located by field path (and file when known)"""
    def __init__(self, field, message, source=None):
        where = field if source is None else '{}: {}'.format(source, field)
        super(InputError, self).__init__('invalid input at [{}]: {}'.format(where, message))
        self.field = field
