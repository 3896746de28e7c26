"""The catalog of identities checked by the verifier.

Every active record is written in the expression language and parsed once at
import time.  Constants stay inside Q(z3): i*sqrt(3) is ``1+2*z3`` (which also
equals w - w^2 for w = z3), exp(-pi*i/3) is ``-z3`` and z3^-1 is ``z3^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .expr import Expr
from .parser import parse


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: Optional[Expr]
    rhs: Optional[Expr]
    reference: str
    default_order: int = 60
    status: str = "active"  # or "gap"
    note: str = ""

    @property
    def active(self) -> bool:
        return self.status == "active"


_ENTRIES = [
    # third order
    ("third.f-psi", "f3(q) + 4*psi3(-q)", "Jp(1)^3/Jp(2)^2",
     "third order: f and psi at -q", 150),
    ("third.chi-f", "4*chi3(q) - f3(q)", "3*Jp(3)^4/(Jp(1)*Jp(6)^2)",
     "third order: chi against f", 150),
    ("third.chi-psi", "chi3(q) + psi3(-q)", "Jp(3)*Jp(4)^3/(Jp(2)^2*Jp(12))",
     "third order: chi and psi at -q", 150),
    # tenth order, at the cube roots of unity
    ("tenth.1", "q^2*phi10(q^9) - (psi10(z3*q) - psi10(z3^2*q))/(z3 - z3^2)",
     "-q*J(1,2)/J(3,6)*J(3,15)*Jp(6)/Jp(3)",
     "tenth order: phi at q^9, psi at w q", 60),
    ("tenth.2", "q^-2*psi10(q^9) + (z3*phi10(z3*q) - z3^2*phi10(z3^2*q))/(z3 - z3^2)",
     "J(1,2)/J(3,6)*J(6,15)*Jp(6)/Jp(3)",
     "tenth order: psi at q^9, phi at w q", 60),
    ("tenth.3", "X10(q^9) - (z3*chi10(z3*q) - z3^2*chi10(z3^2*q))/(z3 - z3^2)",
     "Jb(1,4)/Jb(3,12)*J(18,30)*Jp(3)/Jp(6)",
     "tenth order: X at q^9, chi at w q", 60),
    ("tenth.4", "chi10(q^9) + q^2*(X10(z3*q) - X10(z3^2*q))/(z3 - z3^2)",
     "-q^3*Jb(1,4)/Jb(3,12)*J(6,30)*Jp(3)/Jp(6)",
     "tenth order: chi at q^9, X at w q", 60),
    ("tenth.5", "phi10(q) - q^-1*psi10(-q^4) + q^-2*chi10(q^8)",
     "Jb(1,2)*j(-q^2;-q^10)/J(2,8)",
     "tenth order: phi, psi at -q^4, chi at q^8", 60),
    ("tenth.6", "psi10(q) + q*phi10(-q^4) + X10(q^8)",
     "Jb(1,2)*j(-q^6;-q^10)/J(2,8)",
     "tenth order: psi, phi at -q^4, X at q^8", 60),
    # sixth order
    ("sixth.A", "phi6(q^9) - psi6(q) - q^-3*psi6(q^9)",
     "Jb(3,12)*Jp(6)^2/(Jb(1,4)*Jb(9,36))",
     "sixth order: phi at q^9 against psi", 100),
    ("sixth.B", "(psi6(z3*q) - psi6(z3^2*q))/((z3 - z3^2)*q)",
     "Jb(1,4)*Jb(9,36)*J(3,6)/(Jb(3,12)*Jp(6))",
     "sixth order: psi at w q", 100),
    # third-order omega at q^3 and f at q^3 via Lerch sums
    ("gm.1", "2*q^2*omega3(q^3)",
     "-2/3*(1 + 2*z3) + 2/3*Jp(2)^4/(Jp(6)*Jp(1)^2)"
     " - 4/3*(-z3)/poch(q^6;q^6;inf)*lerch(z3^2;2,2,0;z3;2,1)",
     "omega(q^3) as a theta quotient plus a Lerch sum", 100),
    ("gm.1.raw", "lerch(z3^2;2,2,0;z3;2,1)",
     "-z3*j(z3^2;q^2)*m(z3^2*q,z3^2;q^2)",
     "the Lerch sum of gm.1 as an Appell function", 100),
    ("gm.1.final", "2*m(z3^2*q,z3^2;q^2)",
     "1 - (1 + 2*z3)*q^2*omega3(q^3) - 1/(1 + 2*z3)*Jp(2)^4/(Jp(1)^2*Jp(6))",
     "the Appell function of gm.1.raw through omega(q^3)", 100),
    ("gm.2", "f3(q^3)",
     "1/3*Jp(1)^4/(Jp(3)*Jp(2)^2) + 4/3/poch(q^3;q^3;inf)*lerch(z3;1,1,0;-1;1,0)",
     "f(q^3) as a theta quotient plus a Lerch sum", 100),
    ("gm.2.raw", "lerch(z3;1,1,0;-1;1,0)",
     "(1 - z3)*poch(q^3;q^3;inf)*m(-z3,-1;q)",
     "the Lerch sum of gm.2 as an Appell function", 100),
    # Watson
    ("watson.main", "f3(q^8) + 2*q*omega3(q) + 2*q^3*omega3(-q^4)",
     "Jp(2)*Jp(4)^6/(Jp(1)^2*Jp(8)^4)",
     "Watson: f(q^8) with omega at q and -q^4", 150),
    ("watson.f3-appell", "f3(q)", "4*m(-q,q;q^3) + J(3,6)^2/Jp(1)",
     "Watson: Appell form of f", 150),
    ("watson.psi3-appell", "psi3(q)", "-m(q,-q;-q^3) + q*Jp(12)^3/(Jp(4)*J(3,12))",
     "Watson: Appell form of psi over the base -q^3", 150),
    # Appell forms
    ("forms.f3", "f3(q)", "2*m(-q,q;q^3) + 2*m(-q,q^2;q^3)",
     "theta-less Appell form of f", 100),
    ("forms.omega3", "q*omega3(q)", "-m(q,q^2;q^6) - m(q,q^4;q^6)",
     "theta-less Appell form of omega", 100),
    ("forms.phi6", "phi6(q)", "2*m(q,-1;q^3)",
     "Appell form of the sixth-order phi", 100),
    ("forms.psi6", "psi6(q)", "m(1,-q;q^3)",
     "Appell form of the sixth-order psi", 100),
    # intermediate theta identities
    ("step.thirdLine",
     "j(z3^2*q;q^6)*j(z3^2*q^2;q^6) - z3^2*j(z3^2*q^4;q^6)*j(z3^2*q^5;q^6)",
     "j(z3^2;q^3)*j(-q;q^3)",
     "theta pair collapsing to j(w^2;q^3) j(-q;q^3)", 150),
    ("step.watson-theta-1",
     "Jp(12)^3/(J(1,6)*Jp(8))*Jp(24)/(Jp(12)^2*Jb(0,12))*Jb(1,6)*Jb(3,6)"
     " + q^2*Jp(12)^3/(J(3,6)*Jp(8))*Jp(24)/(Jp(12)^2*Jb(4,12))*Jb(1,6)^2",
     "1/2*Jp(2)*Jp(4)^6/(Jp(1)^2*Jp(8)^4)",
     "theta pair reducing the Watson identity", 150),
]

_GAP_NOTE = (
    "involves sixth-order functions rho, sigma, lambda, mu, phi_, psi_ whose "
    "Eulerian definitions are not available here; recorded, not verified"
)

_GAPS = [
    ("sixth-new.1", "new sixth-order identity 1"),
    ("sixth-new.2", "new sixth-order identity 2"),
    ("sixth-new.3", "new sixth-order identity 3"),
]


def _build() -> dict[str, IdentityRecord]:
    out: dict[str, IdentityRecord] = {}
    for rid, lhs, rhs, ref, order in _ENTRIES:
        out[rid] = IdentityRecord(rid, parse(lhs), parse(rhs), ref, order)
    for rid, ref in _GAPS:
        out[rid] = IdentityRecord(rid, None, None, ref, 60, "gap", _GAP_NOTE)
    return out


CATALOG: dict[str, IdentityRecord] = _build()


def ids() -> list[str]:
    """Catalog ids in their deterministic (sorted) order."""
    return sorted(CATALOG)


def get(rid: str) -> IdentityRecord:
    try:
        return CATALOG[rid]
    except KeyError:
        raise KeyError(f"unknown identity id {rid!r}") from None


def active_records() -> list[IdentityRecord]:
    return [CATALOG[i] for i in ids() if CATALOG[i].active]
