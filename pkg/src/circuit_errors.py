#!/usr/bin/env python3
"""
Exception hierarchy shared by every stage of the toolkit.

Library code raises these; only the CLI maps them to exit codes.
"""


class CircuitError(Exception):
    """Base class for all toolkit errors."""


class InvalidCircuit(CircuitError):
    """A circuit violates a structural invariant (operands, segments, roles)."""


class CompositeGatePresent(CircuitError):
    """A Clifford+T-only operation received a TOFFOLI/PERES/TR gate."""


class RegisterMismatch(CircuitError):
    """Two circuits do not share the same register."""


class NonInvertibleComposite(CircuitError):
    """No verified inverse is registered for a composite gate."""


class NotClassical(CircuitError):
    """A permutation-only operation received H, T or TDAG."""


class DimensionMismatch(CircuitError):
    """Statevector and circuit sizes disagree."""


class TooLarge(CircuitError):
    """A dense operation was requested above its qubit cap."""


class OutOfRange(CircuitError):
    """An operand does not fit the declared bit-width."""


class ArityMismatch(CircuitError):
    """A truth table or operand list has the wrong arity for its gate."""


class NTooSmall(CircuitError):
    """Requested operand width is below what a builder supports."""


class UnsupportedComposite(CircuitError):
    """The compiler has no template for a gate kind."""


class TooLargeForExhaustive(CircuitError):
    """Exhaustive verification was requested above the input-bit cap."""


class QasmSyntaxError(CircuitError):
    """Exported text does not parse as the supported OpenQASM 2.0 subset."""


class TemplateMismatch(CircuitError):
    """A Clifford+T template does not implement the gate it is registered for."""
