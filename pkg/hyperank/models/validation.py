from .base import FrozenModel


class Violation(FrozenModel):
    path: str
    message: str
