"""Closed-form evaluation of the curve families and their derivatives.

Polynomial derivatives use falling factorials on the monomial basis,
sine-product derivatives use the Leibniz rule on x * sin(pi * x - w_1).
Every function accepts a scalar x or an array of positions.
"""
import math
from typing import Dict, Sequence, Union

import numpy as np

from app.entities.family import FamilyKind, FunctionFamily
from app.entities.support import SupportCondition
from app.errors import DimensionError, UnsupportedOrderError

ArrayLike = Union[float, np.ndarray]


def _check(family: FunctionFamily, w, order: int) -> np.ndarray:
    if order < 0 or order > family.max_order:
        raise UnsupportedOrderError(f'derivative order {order} not in [0, {family.max_order}]')
    w = np.asarray(w, dtype=float)
    if w.shape != (family.param_dim,):
        raise DimensionError(f'expected {family.param_dim} parameters, got shape {w.shape}')
    return w


def _poly_basis(degree: int, x: np.ndarray, order: int) -> np.ndarray:
    # d^order/dx^order x^i = i!/(i-order)! * x^(i-order), zero for i < order
    basis = np.zeros(x.shape + (degree + 1,))
    for i in range(order, degree + 1):
        basis[..., i] = math.perm(i, order) * x ** (i - order)
    return basis


def _sine_parts(w: np.ndarray, x: np.ndarray, order: int):
    phase = np.pi * x - w[1]
    lead = x * np.pi ** order * np.sin(phase + order * np.pi / 2)
    lead_dw1 = -x * np.pi ** order * np.cos(phase + order * np.pi / 2)
    if order > 0:
        lead = lead + order * np.pi ** (order - 1) * np.sin(phase + (order - 1) * np.pi / 2)
        lead_dw1 = lead_dw1 - order * np.pi ** (order - 1) * np.cos(phase + (order - 1) * np.pi / 2)
    if order == 0:
        linear = x
    elif order == 1:
        linear = np.ones_like(x)
    else:
        linear = np.zeros_like(x)
    return lead, lead_dw1, linear


def eval_deriv(family: FunctionFamily, w, x: ArrayLike, order: int = 0) -> ArrayLike:
    w = _check(family, w, order)
    xs = np.asarray(x, dtype=float)
    if family.kind == FamilyKind.polynomial:
        res = _poly_basis(family.degree, xs, order) @ w
    else:
        lead, _, linear = _sine_parts(w, xs, order)
        res = w[0] * lead + w[2] * linear
    return float(res) if np.ndim(res) == 0 else res


def grad_w_deriv(family: FunctionFamily, w, x: ArrayLike, order: int = 0) -> np.ndarray:
    """Gradient in w of the order-th x-derivative; shape (k,) for scalar x, (n, k) for n positions."""
    w = _check(family, w, order)
    xs = np.asarray(x, dtype=float)
    if family.kind == FamilyKind.polynomial:
        return _poly_basis(family.degree, xs, order)
    lead, lead_dw1, linear = _sine_parts(w, xs, order)
    return np.stack([lead, w[0] * lead_dw1, linear], axis=-1)


def _weights_for(conditions: Sequence[SupportCondition], weights: Dict[int, float]) -> np.ndarray:
    res = np.empty(len(conditions))
    for j, cond in enumerate(conditions):
        weight = weights.get(cond.order, 1.0) if weights else 1.0
        if weight <= 0:
            raise ValueError(f'weight for order {cond.order} must be positive')
        res[j] = weight
    return np.sqrt(res)


def residuals(family: FunctionFamily, w, conditions: Sequence[SupportCondition],
              weights: Dict[int, float] = None) -> np.ndarray:
    """Weighted residual vector whose squared norm is the support-point objective."""
    if not conditions:
        return np.zeros(0)
    scale = _weights_for(conditions, weights)
    values = np.array([eval_deriv(family, w, c.x, c.order) - c.y for c in conditions])
    return scale * values


def jacobian(family: FunctionFamily, w, conditions: Sequence[SupportCondition],
             weights: Dict[int, float] = None) -> np.ndarray:
    """Jacobian of `residuals` in w, one row per condition."""
    if not conditions:
        return np.zeros((0, family.param_dim))
    scale = _weights_for(conditions, weights)
    rows = np.array([grad_w_deriv(family, w, c.x, c.order) for c in conditions])
    return scale[:, None] * rows
