"""Domain error types shared by the core modules, the service, and the CLI.

Every domain-level failure carries a machine-readable code, the name of the
module it originated in, and an optional location payload, so callers can
emit structured error objects instead of bare strings.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for failures raised by domain logic (not usage mistakes)."""

    module = "core"

    def __init__(self, code: str, message: str, location: dict | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.location = location

    def to_dict(self) -> dict:
        obj: dict = {"code": self.code, "module": self.module, "message": self.message}
        if self.location is not None:
            obj["location"] = self.location
        return obj


class PanelError(DomainError):
    module = "data"


class AccountingError(DomainError):
    module = "accounting"


class ModelError(DomainError):
    module = "model"


class CalibrationError(DomainError):
    module = "calibrate"


class SimulationError(DomainError):
    module = "simulate"


class ServiceError(DomainError):
    module = "service"
