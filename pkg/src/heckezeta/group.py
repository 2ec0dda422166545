"""Algebra of the Hecke triangle group G_w = <S, T_w>, w > 2.

S(z) = -1/z, T_w(z) = z + w.  The group is the free product Z/2 * Z, so
every hyperbolic conjugacy class has a unique cyclic representative
S T^{n_1} S T^{n_2} ... S T^{n_p} with all n_i != 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import linalg as sla

from .errors import NotHyperbolicError, ParameterError

log = logging.getLogger(__name__)

HYPERBOLIC_TOL = 1e-12


def check_width(w: float) -> float:
    w = float(w)
    if not (w > 2.0 and math.isfinite(w)):
        raise ParameterError("cusp width must be finite with w > 2", w=w)
    return w


def hull_endpoint(w: float) -> float:
    """a = (w - sqrt(w^2 - 4))/2; Lambda_0 lies in [-a, a] and a(w - a) = 1."""
    w = check_width(w)
    # same root, written without cancellation
    return 2.0 / (w + math.sqrt(w * w - 4.0))


@dataclass(frozen=True)
class MoebiusMap:
    """Element of PSL(2, R) stored as a normalized representative."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = max(1.0, abs(self.a * self.d), abs(self.b * self.c))
        if abs(det - 1.0) > 1e-12 * scale:
            raise ParameterError("Moebius matrix must have unit determinant", det=det)
        for x in (self.a, self.b, self.c, self.d):
            if x != 0.0:
                if x < 0.0:
                    object.__setattr__(self, "a", -self.a)
                    object.__setattr__(self, "b", -self.b)
                    object.__setattr__(self, "c", -self.c)
                    object.__setattr__(self, "d", -self.d)
                break

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def S(cls) -> "MoebiusMap":
        return cls(0.0, 1.0, -1.0, 0.0)

    @classmethod
    def T(cls, w: float, n: int = 1) -> "MoebiusMap":
        return cls(1.0, n * float(w), 0.0, 1.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __call__(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivative(self, z):
        return 1.0 / (self.c * z + self.d) ** 2

    def is_close(self, other: "MoebiusMap", tol: float = 1e-10) -> bool:
        return bool(np.allclose(self.matrix, other.matrix, atol=tol)
                    or np.allclose(self.matrix, -other.matrix, atol=tol))


def branch_map(n: int, w: float) -> MoebiusMap:
    """gamma_n = S T_w^n, i.e. z -> -1/(z + n w)."""
    w = check_width(w)
    if int(n) != n or n == 0:
        raise ParameterError("branch index must be a nonzero integer", n=n)
    return MoebiusMap(0.0, 1.0, -1.0, -int(n) * w)


def _least_rotation(seq: tuple) -> tuple:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _is_primitive(seq: tuple) -> bool:
    p = len(seq)
    for q in range(1, p):
        if p % q == 0 and seq == seq[:q] * (p // q):
            return False
    return True


@dataclass(frozen=True)
class GroupWord:
    """S T^{n_1} ... S T^{n_p} (kind 'mixed'), T^n (kind 'T') or S (kind 'S')."""

    exponents: tuple
    kind: str = "mixed"

    def __post_init__(self):
        exps = tuple(int(n) for n in self.exponents)
        object.__setattr__(self, "exponents", exps)
        if self.kind == "mixed":
            if not exps or any(n == 0 for n in exps):
                raise ParameterError("mixed words need nonzero exponents", exponents=exps)
        elif self.kind == "T":
            if len(exps) != 1:
                raise ParameterError("a T-power word carries one exponent")
        elif self.kind == "S":
            if exps:
                raise ParameterError("the S word carries no exponents")
        else:
            raise ParameterError("unknown word kind", kind=self.kind)

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Inverse of ``str``: '(1,-2,3)', 'T^4' or 'S'."""
        text = text.strip()
        if text == "S":
            return cls((), "S")
        if text.startswith("T^"):
            return cls((int(text[2:]),), "T")
        if not (text.startswith("(") and text.endswith(")")):
            raise ParameterError("cannot parse group word", text=text)
        return cls(tuple(int(x) for x in text[1:-1].split(",")))

    def __str__(self) -> str:
        if self.kind == "S":
            return "S"
        if self.kind == "T":
            return f"T^{self.exponents[0]}"
        return "(" + ",".join(str(n) for n in self.exponents) + ")"

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.kind == other.kind == "mixed":
            return GroupWord(self.exponents + other.exponents)
        raise ParameterError("concatenation is defined for mixed words only")

    def canonical(self) -> "GroupWord":
        if self.kind != "mixed":
            return self
        return GroupWord(_least_rotation(self.exponents))

    @property
    def is_primitive(self) -> bool:
        return self.kind == "mixed" and _is_primitive(self.exponents)

    def inverse_class(self) -> "GroupWord":
        """Canonical word of the inverse class: reversed, negated exponents."""
        return GroupWord(tuple(-n for n in reversed(self.exponents))).canonical()

    def matrix(self, w: float) -> MoebiusMap:
        w = float(w)
        if self.kind == "S":
            return MoebiusMap.S()
        if self.kind == "T":
            return MoebiusMap.T(w, self.exponents[0])
        g = MoebiusMap.identity()
        for n in self.exponents:
            g = g @ MoebiusMap(0.0, 1.0, -1.0, -n * w)
        return g


def geodesic_length(word: GroupWord, w: float) -> float:
    """2 arccosh(|tr|/2) for a hyperbolic word."""
    tr = abs(word.matrix(w).trace)
    if not tr > 2.0 + HYPERBOLIC_TOL:
        raise NotHyperbolicError(f"word {word} is not hyperbolic", word=str(word), trace=tr)
    x = 0.5 * tr
    return 2.0 * math.log(x + math.sqrt((x - 1.0) * (x + 1.0)))


def _letter_cost(n: int, w: float, a: float) -> float:
    # lower bound for 2 log|x + n w| over x in [-a, a]
    return 2.0 * math.log(abs(n) * w - a)


def enumerate_primitive_classes(w: float, ell_max: float, stats: dict | None = None):
    """All primitive hyperbolic classes with length <= ell_max.

    Returns a list of (GroupWord, length) sorted by (length, word); each class
    appears once through its least cyclic rotation, gamma and gamma^{-1}
    separately.  Enumeration is exhaustive: along the attracting periodic
    orbit in [-a, a] each letter n contributes at least 2 log(|n| w - a) to
    the length, so words whose letter costs exceed ell_max are pruned.
    """
    w = check_width(w)
    ell_max = float(ell_max)
    if not ell_max > 0:
        raise ParameterError("ell_max must be positive", ell_max=ell_max)
    a = hull_endpoint(w)
    # letters sorted by cost (costs grow with |n|)
    n_max = int(math.floor((math.exp(ell_max / 2.0) + a) / w))
    letters = []
    for n in range(1, n_max + 1):
        c = _letter_cost(n, w, a)
        if c <= ell_max + 1e-12:
            letters.append((n, c))
            letters.append((-n, c))

    found: dict[tuple, float] = {}
    skipped = 0
    seen = 0

    def extend(prefix: list, budget: float):
        nonlocal skipped, seen
        for n, c in letters:
            if c > budget + 1e-12:
                break
            # a least rotation starts with its smallest entry
            if prefix and n < prefix[0]:
                continue
            prefix.append(n)
            seq = tuple(prefix)
            seen += 1
            if _least_rotation(seq) == seq and _is_primitive(seq):
                try:
                    ell = geodesic_length(GroupWord(seq), w)
                except NotHyperbolicError:
                    skipped += 1
                else:
                    if ell <= ell_max:
                        found[seq] = ell
            extend(prefix, budget - c)
            prefix.pop()

    extend([], ell_max)
    if skipped:
        log.warning("skipped %d non-hyperbolic words", skipped)
    if stats is not None:
        stats["skipped_non_hyperbolic"] = skipped
        stats["words_examined"] = seen
    out = [(GroupWord(seq), ell) for seq, ell in found.items()]
    out.sort(key=lambda item: (item[1], item[0].exponents))
    return out


# -- unitary representations ------------------------------------------------

def _is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=tol))


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """Unitary representation fixed by the generator images U_S and U_T.

    Since G_w = Z/2 * Z, any unitary U_S with U_S^2 = 1 and any unitary U_T
    define a representation.  ``Q`` diagonalizes U_T as
    Q* U_T Q = diag(exp(-2 pi i lam_k)).
    """

    U_S: np.ndarray
    U_T: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        us = np.atleast_2d(np.asarray(self.U_S, dtype=complex))
        ut = np.atleast_2d(np.asarray(self.U_T, dtype=complex))
        object.__setattr__(self, "U_S", us)
        object.__setattr__(self, "U_T", ut)
        if us.shape != ut.shape or us.shape[0] != us.shape[1]:
            raise ParameterError("U_S and U_T must be square of equal size")
        if not (_is_unitary(us) and _is_unitary(ut)):
            raise ParameterError("generator images must be unitary", rep=self.name)
        if not np.allclose(us @ us, np.eye(us.shape[0]), atol=1e-12):
            raise ParameterError("U_S must square to the identity", rep=self.name)

    @property
    def dim(self) -> int:
        return self.U_S.shape[0]

    @cached_property
    def _diag(self):
        T, Q = sla.schur(self.U_T, output="complex")
        eig = np.diag(T)
        lam = (-np.angle(eig) / (2.0 * math.pi)) % 1.0
        lam = np.where(lam > 1.0 - 1e-13, 0.0, lam)
        lam = np.where(lam < 1e-13, 0.0, lam)
        return Q, lam

    @property
    def Q(self) -> np.ndarray:
        return self._diag[0]

    @property
    def lambdas(self) -> np.ndarray:
        return self._diag[1]

    @property
    def S_hat(self) -> np.ndarray:
        """U_S written in the eigenbasis of U_T."""
        Q = self.Q
        return Q.conj().T @ self.U_S @ Q

    def T_power(self, n: int) -> np.ndarray:
        Q, lam = self._diag
        return (Q * np.exp(-2j * math.pi * n * lam)) @ Q.conj().T

    @property
    def is_self_conjugate(self) -> bool:
        """True when the character is real on every element (zeros come in conjugate pairs)."""
        return bool(np.allclose(self.U_S.imag, 0) and np.allclose(np.sort(self.lambdas),
                                                                    np.sort((-self.lambdas) % 1.0 % 1.0)))

    def key(self) -> str:
        """Stable identifier used in cache keys and artifacts."""
        data = np.round(np.concatenate([self.U_S.ravel(), self.U_T.ravel()]), 12)
        body = ",".join(f"{z.real:.12g}:{z.imag:.12g}" for z in data)
        return f"{self.name}[{self.dim}]{{{body}}}"

    def direct_sum(self, other: "UnitaryRep", name: str | None = None) -> "UnitaryRep":
        return UnitaryRep(sla.block_diag(self.U_S, other.U_S), sla.block_diag(self.U_T, other.U_T),
                          name or f"{self.name}+{other.name}")


def trivial_rep() -> UnitaryRep:
    return UnitaryRep(np.eye(1), np.eye(1), "trivial")


def sign_rep() -> UnitaryRep:
    return UnitaryRep(-np.eye(1), np.eye(1), "sign")


def character_rep(lam: float, s_sign: int = 1) -> UnitaryRep:
    """One-dimensional character with U_T = exp(-2 pi i lam), U_S = +-1."""
    if s_sign not in (1, -1):
        raise ParameterError("U_S of a character is +1 or -1", s_sign=s_sign)
    return UnitaryRep(np.array([[float(s_sign)]]), np.array([[np.exp(-2j * math.pi * lam)]]),
                      f"character({lam:g})")


def induce_from_index2(w: float) -> UnitaryRep:
    """Representation induced from the trivial character of <T_w, S T_w S>.

    Cosets H and S H: T fixes both, S swaps them.  Decomposes as
    trivial + sign (see ``index2_summands``).
    """
    check_width(w)
    return UnitaryRep(np.array([[0.0, 1.0], [1.0, 0.0]]), np.eye(2), "induced-index2")


def index2_summands() -> tuple[UnitaryRep, UnitaryRep]:
    return trivial_rep(), sign_rep()


def evaluate_rep(rep: UnitaryRep, word: GroupWord) -> np.ndarray:
    if word.kind == "S":
        return rep.U_S.copy()
    if word.kind == "T":
        return rep.T_power(word.exponents[0])
    out = np.eye(rep.dim, dtype=complex)
    for n in word.exponents:
        out = out @ rep.U_S @ rep.T_power(n)
    return out
