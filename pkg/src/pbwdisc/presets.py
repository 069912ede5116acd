"""Named algebras used throughout: W_n, V_n(A), k_{-1}[x], A_q and k_q[x1,x2][x3]."""

from __future__ import annotations

from .algebra import AlgebraSpec
from .center import CenterSpec, validate_center
from .field import QQ, NumberField, cyclotomic_field


def v_n(n: int, a, field: NumberField = QQ, name=None) -> AlgebraSpec:
    """(-1)-quantum Weyl algebra: x_i x_j + x_j x_i = a_ij.

    ``a`` is a scalar or a dict keyed by 0-based pairs (i, j), i < j.
    """
    return AlgebraSpec(n, q=-1, a=a, field=field, name=name or f"V{n}")


def weyl_minus_one(n: int) -> AlgebraSpec:
    return v_n(n, 1, name=f"W{n}")


def skew_minus_one(n: int) -> AlgebraSpec:
    return v_n(n, 0, name=f"k-1[x1..x{n}]")


def quantum_weyl(q, field: NumberField = QQ) -> AlgebraSpec:
    """A_q: x2 x1 = q x1 x2 + 1."""
    return AlgebraSpec(2, q={(0, 1): q}, a={(0, 1): 1}, field=field, name=f"A_q(q={q})")


def quantum_plane_extension(ell: int) -> tuple[AlgebraSpec, tuple]:
    """k_q[x1, x2][x3] with q a primitive ell-th root of unity; returns (spec, center powers)."""
    if ell < 3:
        raise ValueError("ell must be at least 3")
    field = cyclotomic_field(ell)
    spec = AlgebraSpec(3, q={(0, 1): field.zeta()}, field=field, name=f"Ex5.9(l={ell})")
    return spec, (ell, ell, 1)


def trivial_spec(field: NumberField = QQ) -> AlgebraSpec:
    return AlgebraSpec(0, field=field, name="k")


def with_center(spec: AlgebraSpec, powers) -> tuple[AlgebraSpec, CenterSpec]:
    return spec, validate_center(spec, powers)


def preset(text: str) -> tuple[AlgebraSpec, CenterSpec | None]:
    """Resolve ``Wn:<n>``, ``kminus1:<n>``, ``Aq:<lit>`` or ``Ex5.9:<l>``."""
    name, _, arg = text.partition(":")
    if not arg:
        raise KeyError(text)
    if name == "Wn":
        n = int(arg)
        return with_center(weyl_minus_one(n), (2,) * n)
    if name == "kminus1":
        n = int(arg)
        return with_center(skew_minus_one(n), (2,) * n)
    if name == "Aq":
        from .parsing import parse_scalar

        q = parse_scalar(arg)
        return quantum_weyl(q), None
    if name == "Ex5.9":
        spec, powers = quantum_plane_extension(int(arg))
        return with_center(spec, powers)
    raise KeyError(text)
