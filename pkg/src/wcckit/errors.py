class WCCError(Exception):
    """Base class for every error raised by wcckit."""


class ParseError(WCCError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ValidationError(WCCError, ValueError):
    def __init__(self, message, offenders=()):
        self.offenders = list(offenders)
        if self.offenders:
            shown = ", ".join(map(str, self.offenders[:20]))
            more = len(self.offenders) - 20
            if more > 0:
                shown += f", ... ({more} more)"
            message = f"{message}: {shown}"
        super().__init__(message)


class DomainError(WCCError, ValueError):
    """An argument is outside the domain where the quantity is defined."""


class CapabilityError(WCCError):
    """The request is well formed but beyond what the tool will attempt."""
