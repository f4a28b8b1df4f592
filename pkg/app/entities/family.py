from enum import Enum
from typing import Optional

from pydantic.v1 import BaseModel, root_validator

from app import constants


class FamilyKind(str, Enum):
    polynomial = 'polynomial'
    sine_product = 'sine_product'


class FunctionFamily(BaseModel):
    """Descriptor of a parametrized curve function f(w, x).

    Serialized as {"kind": "polynomial", "degree": d} or {"kind": "sine_product"};
    max_order only appears when it differs from the default.
    """
    kind: FamilyKind
    degree: Optional[int] = None
    max_order: int = constants.MAX_DERIVATIVE_ORDER

    class Config:
        allow_mutation = False
        use_enum_values = True

    @root_validator
    def check_degree(cls, values):
        kind, degree = values.get('kind'), values.get('degree')
        if kind == FamilyKind.polynomial:
            if degree is None or degree < 0:
                raise ValueError('polynomial family needs a non-negative degree')
        elif degree is not None:
            raise ValueError('sine_product family takes no degree')
        if values.get('max_order', 0) < 2:
            raise ValueError('max_order must be at least 2')
        return values

    @property
    def param_dim(self) -> int:
        if self.kind == FamilyKind.polynomial:
            return self.degree + 1
        return 3

    def dict(self, **kwargs):
        res = super().dict(**kwargs)
        if res.get('degree') is None:
            res.pop('degree', None)
        if res.get('max_order') == constants.MAX_DERIVATIVE_ORDER:
            res.pop('max_order', None)
        return res

    @staticmethod
    def polynomial(degree: int, max_order: int = constants.MAX_DERIVATIVE_ORDER) -> "FunctionFamily":
        return FunctionFamily(kind=FamilyKind.polynomial, degree=degree, max_order=max_order)

    @staticmethod
    def sine_product(max_order: int = constants.MAX_DERIVATIVE_ORDER) -> "FunctionFamily":
        return FunctionFamily(kind=FamilyKind.sine_product, max_order=max_order)
