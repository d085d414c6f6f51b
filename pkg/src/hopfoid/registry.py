"""Builtin example configurations."""

from __future__ import annotations

from typing import Dict, Tuple

from .config import RunConfig, parse_config

_S3 = """\
name = s3-adjoint
track = finite-group
elements = e r r2 s sr sr2
# row g lists g*h for h in element order; sr is s after r
table
  e   : e   r   r2  s   sr  sr2
  r   : r   r2  e   sr2 s   sr
  r2  : r2  e   r   sr  sr2 s
  s   : s   sr  sr2 e   r   r2
  sr  : sr  sr2 s   r2  e   r
  sr2 : sr2 s   sr  r   r2  e
end
seed = 7
"""

_C2 = """\
name = c2-adjoint
track = finite-group
elements = e s
table
  e : e s
  s : s e
end
seed = 7
"""

_ABELIAN = """\
name = abelian-2d
track = lie-algebra
generators = x0 x1
brackets
end
window = A=3,T=3
seed = 7
"""

_HEISENBERG = """\
name = heisenberg-3d
track = lie-algebra
generators = x1 x2 x3
brackets
  x1 x2 = x3
end
window = A=2,T=2
seed = 7
"""

_KAPPA2 = """\
name = kappa-2d
track = lie-algebra
generators = x0 x1
brackets
  x0 x1 = x1
end
window = A=3,T=3
seed = 7
"""

_KAPPA4 = """\
name = kappa-4d
track = lie-algebra
generators = x0 x1 x2 x3
brackets
  x0 x1 = x1
  x0 x2 = x2
  x0 x3 = x3
end
window = A=1,T=2
seed = 7
"""

BUILTINS: Dict[str, Tuple[str, str]] = {
    "s3-adjoint": ("kS3 # kS3 with the conjugation action and rho(h) = h (x) h^-1; fully exact", _S3),
    "c2-adjoint": ("kC2 # kC2, commutative base, fully exact", _C2),
    "abelian-2d": ("U(g) over S(g*) for abelian g of dimension 2; trivial coaction, exact", _ABELIAN),
    "heisenberg-3d": ("Heisenberg algebra [x1,x2] = x3; nilpotent, coaction exact", _HEISENBERG),
    "kappa-2d": ("[x0,x1] = x1; dual coproduct truncated, verdicts up to T-degree N", _KAPPA2),
    "kappa-4d": ("[x0,xi] = xi for i = 1,2,3; small window", _KAPPA4),
}


def builtin_names():
    return list(BUILTINS)


def builtin_text(name: str) -> str:
    if name not in BUILTINS:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(BUILTINS)}")
    return BUILTINS[name][1]


def builtin_config(name: str) -> RunConfig:
    return parse_config(builtin_text(name), source=f"builtin:{name}")


BROKEN_JACOBI = """\
name = broken-jacobi
track = lie-algebra
generators = x1 x2 x3
brackets
  x1 x2 = x3
  x1 x3 = x1
end
window = A=1,T=1
"""
