"""
    .. _comet-exceptions:

    **exceptions**
    --------------

    Exceptions raised by the COMET and COSMOS memory models
"""

class CometException(Exception):
    """ Base memory model exception """
    pass


class NotValid(CometException):
    """ Base exception for inputs which break a model invariant """
    pass


class GeometryError(NotValid):
    """ Exception for a memory organization that violates an invariant

        Parameters
        ----------
        invariant : str
            Short name of the violated invariant, e.g. 'non-square-S_r'.

        detail : str, optional
            Additional description of the offending values.
    """
    def __init__(self, invariant, detail=''):
        NotValid.__init__(self, invariant, detail)
        self.invariant = invariant
        self.detail = detail

    def __str__(self):
        if self.detail:
            return "Geometry invalid ({inv}): {detail}".format(inv=self.invariant, detail=self.detail)
        return "Geometry invalid ({inv})".format(inv=self.invariant)


class AddressBoundsError(NotValid):
    """ Exception for an address field outside the geometry

        Parameters
        ----------
        field : str
            The name of the address field.

        value : int
            The offending value.

        bound : int
            The exclusive upper bound of the field.
    """
    def __init__(self, field, value, bound):
        NotValid.__init__(self, field, value, bound)
        self.field = field
        self.value = value
        self.bound = bound

    def __str__(self):
        return "Address field {field}={value} outside [0, {bound})".format(field=self.field,
                                                                          value=self.value,
                                                                          bound=self.bound)


class CapacityError(NotValid):
    """ Exception for a byte address beyond the memory capacity

        Parameters
        ----------
        address : int
            The byte address.

        capacity : int
            The capacity in bytes.
    """
    def __init__(self, address, capacity):
        NotValid.__init__(self, address, capacity)
        self.address = address
        self.capacity = capacity

    def __str__(self):
        return "Address 0x{addr:x} exceeds capacity of {cap} bytes".format(addr=self.address,
                                                                            cap=self.capacity)


class DomainError(NotValid):
    """ Exception for a quantity outside its physical or modeled domain

        Parameters
        ----------
        quantity : str
            The name of the quantity.

        value : various
            The offending value.

        allowed : str
            Description of the allowed domain.
    """
    def __init__(self, quantity, value, allowed):
        NotValid.__init__(self, quantity, value, allowed)
        self.quantity = quantity
        self.value = value
        self.allowed = allowed

    def __str__(self):
        return "{q}={v} outside its domain {a}".format(q=self.quantity, v=self.value, a=self.allowed)


class LevelTableSchemaError(NotValid):
    """ Exception for a level-table override that does not fit the table

        Parameters
        ----------
        msg : str
            Description of the problem.
    """
    def __init__(self, msg):
        NotValid.__init__(self, msg)
        self.msg = msg

    def __str__(self):
        return "Level table override invalid: {msg}".format(msg=self.msg)


class ConfigSchemaError(NotValid):
    """ Exception for a configuration value that fails validation

        Parameters
        ----------
        path : str
            Dotted path to the field, e.g. 'geometry.banks'.

        msg : str
            Description of the problem.
    """
    def __init__(self, path, msg):
        NotValid.__init__(self, path, msg)
        self.path = path
        self.msg = msg

    def __str__(self):
        return "Config field {path}: {msg}".format(path=self.path, msg=self.msg)


class DecodeError(CometException):
    """ Exception for a readout that cannot be assigned to a single level

        Parameters
        ----------
        measured : float
            The measured transmission.

        candidates : tuple
            The two symbol values the readout lies between.
    """
    def __init__(self, measured, candidates):
        CometException.__init__(self, measured, candidates)
        self.measured = measured
        self.candidates = tuple(candidates)

    def __str__(self):
        return "Ambiguous readout T={t:.6f}, candidates {c}".format(t=self.measured,
                                                                     c=self.candidates)


class LutConsistencyError(CometException):
    """ Exception for a gain LUT whose selector points past its entries

        Parameters
        ----------
        row_id : int
            The row being looked up.

        index : int
            The selector result.

        size : int
            The number of stored entries.
    """
    def __init__(self, row_id, index, size):
        CometException.__init__(self, row_id, index, size)
        self.row_id = row_id
        self.index = index
        self.size = size

    def __str__(self):
        return "LUT selector for row {r} gave entry {i} but only {n} entries stored".format(r=self.row_id,
                                                                                              i=self.index,
                                                                                              n=self.size)


class ModelError(CometException):
    """ Exception for inputs outside what the analytic power model covers

        Parameters
        ----------
        msg : str
            Description of the problem.
    """
    def __init__(self, msg):
        CometException.__init__(self, msg)
        self.msg = msg

    def __str__(self):
        return "Model error: {msg}".format(msg=self.msg)


class TraceException(CometException):
    """ Base trace exception """
    pass


class TraceSyntaxError(TraceException):
    """ Exception for a trace line that does not match the grammar

        Parameters
        ----------
        lineno : int
            The 1-based line number.

        column : int
            The 1-based column where the bad field starts.

        text : str
            The offending line.

        msg : str
            What was wrong.
    """
    def __init__(self, lineno, column, text, msg):
        TraceException.__init__(self, lineno, column, text, msg)
        self.lineno = lineno
        self.column = column
        self.text = text
        self.msg = msg

    def __str__(self):
        return "Trace line {l}, column {c}: {m} ({t!r})".format(l=self.lineno, c=self.column,
                                                                m=self.msg, t=self.text)


class TraceOrderError(TraceException):
    """ Exception for a request whose arrival time goes backwards

        Parameters
        ----------
        lineno : int
            The 1-based line number.

        time_ns : float
            The arrival time on that line.

        previous_ns : float
            The arrival time of the previous request.
    """
    def __init__(self, lineno, time_ns, previous_ns):
        TraceException.__init__(self, lineno, time_ns, previous_ns)
        self.lineno = lineno
        self.time_ns = time_ns
        self.previous_ns = previous_ns

    def __str__(self):
        return "Trace line {l}: time {t} ns before previous request at {p} ns".format(l=self.lineno,
                                                                                      t=self.time_ns,
                                                                                      p=self.previous_ns)
