class QFCError(Exception):
    """Base class for all errors raised by the simulator."""


class ParameterDomainError(QFCError, ValueError):
    """A physical parameter, grid or pulse lies outside its allowed domain."""


class ConfigurationError(QFCError, ValueError):
    """A config file or composite configuration is inconsistent."""


class NumericalFailure(QFCError, RuntimeError):
    """Integration produced non-finite values or failed to converge.

    Arguments:
        message: human readable description
        diagnostics: dict of quantities useful for post-mortem (step counts,
            magnitudes, offending parameter values)
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics if diagnostics is not None else {}

    def __str__(self):
        msg = super().__str__()
        if not self.diagnostics:
            return msg
        return '{0} ({1})'.format(msg, ', '.join(
            '{0}={1}'.format(k, v) for k, v in self.diagnostics.items()))
