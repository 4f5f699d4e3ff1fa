"""Laurent polynomials, group algebras and their controlled fractions.

Three layers share this module because they constantly feed each other:

* ``LaurentPoly``: sparse multivariate Laurent polynomials whose
  exponents live on a doubled lattice, so substitutions t -> t^(1/2)
  are exact integer bookkeeping and "is this integral" is a parity
  predicate on stored exponents.
* ``GroupAlg``: Q[H] for a finitely generated abelian H, keyed by
  Smith-normal-form group elements.
* ``QHFraction``: elements of the total quotient ring presented as a
  group-algebra numerator over a multiset of denominators (h - 1) with
  h of infinite order.  Equality is decided by cross-multiplication,
  never by clearing to a canonical form.

Character decomposition / reassembly against the torsion subgroup and
the componentwise reduced inverse also live here.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd

from .abgroup import FgAbelianGroup, GroupElement
from .errors import (
    DirectionNotPrimitive,
    HalfIntegerExponent,
    NonRationalReassembly,
    NotDivisible,
    NotInDomain,
    ResourceLimit,
)
from .exactnum import Cyclotomic, scalar_conjugate, scalar_is_zero, scalar_rational


def _coerce(c):
    if isinstance(c, (Cyclotomic, Fraction)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


# =========================================================================
# Laurent polynomials on the doubled exponent lattice
# =========================================================================

class LaurentPoly:
    """Sparse Laurent polynomial; stored exponents are twice the real ones."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, doubled_terms):
        object.__setattr__(self, "vars", tuple(variables))
        clean = {}
        for exps, c in doubled_terms.items():
            c = _coerce(c)
            if not scalar_is_zero(c):
                if len(exps) != len(self.vars):
                    raise ValueError("exponent arity mismatch")
                clean[tuple(int(e) for e in exps)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(variables):
        return LaurentPoly(variables, {})

    @staticmethod
    def constant(variables, c):
        return LaurentPoly(variables, {(0,) * len(tuple(variables)): c})

    @staticmethod
    def from_pairs(variables, pairs):
        """Build from (integer exponent vector, coefficient) pairs."""
        variables = tuple(variables)
        acc = {}
        for exps, c in pairs:
            key = tuple(2 * int(e) for e in exps)
            acc[key] = acc.get(key, Fraction(0)) + _coerce(c)
        return LaurentPoly(variables, acc)

    @staticmethod
    def var_monomial(variables, name, exp=1, c=1):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 2 * exp
        return LaurentPoly(variables, {tuple(e): c})

    # -- inspection --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_integral(self):
        return all(all(e % 2 == 0 for e in exps) for exps in self.terms)

    def integer_pairs(self):
        """Sorted (integer exponent vector, coefficient) pairs."""
        out = []
        for exps in sorted(self.terms):
            if any(e % 2 for e in exps):
                raise HalfIntegerExponent(f"half-integer exponent {exps}")
            out.append((tuple(e // 2 for e in exps), self.terms[exps]))
        return out

    def coefficient(self, int_exps):
        return self.terms.get(tuple(2 * e for e in int_exps), Fraction(0))

    def constant_coefficient(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentPoly.constant(self.vars, other)
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
        return LaurentPoly(self.vars, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentPoly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return LaurentPoly(self.vars,
                               {e: c * other for e, c in self.terms.items()})
        if self.vars != other.vars:
            raise ValueError("variable mismatch")
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                v = acc.get(key)
                acc[key] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPoly(self.vars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentPoly.constant(self.vars, other)
        if not isinstance(other, LaurentPoly) or self.vars != other.vars:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = Fraction(0)
        return all(
            scalar_is_zero(self.terms.get(k, zero) - other.terms.get(k, zero))
            for k in keys)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- involution and substitutions ------------------------------------------

    def bar(self):
        """t_i -> t_i^(-1) on variables, complex conjugation on scalars."""
        return LaurentPoly(
            self.vars,
            {tuple(-e for e in exps): scalar_conjugate(c)
             for exps, c in self.terms.items()})

    def substitute_sqrt(self):
        """t_i -> t_i^(1/2) for all variables (exact on the doubled lattice)."""
        acc = {}
        for exps, c in self.terms.items():
            if any(e % 2 for e in exps):
                raise HalfIntegerExponent("sqrt substitution of a half-integer exponent")
            acc[tuple(e // 2 for e in exps)] = c
        return LaurentPoly(self.vars, acc)

    def mul_half_monomial(self, doubled_exps, c=1):
        """Multiply by c * prod t_i^(doubled_exps_i / 2)."""
        d = tuple(int(e) for e in doubled_exps)
        return LaurentPoly(
            self.vars,
            {tuple(a + b for a, b in zip(exps, d)): coef * c
             for exps, coef in self.terms.items()})

    def set_var_one(self, name):
        """Specialize one variable to 1; the variable disappears."""
        idx = self.vars.index(name)
        new_vars = self.vars[:idx] + self.vars[idx + 1:]
        acc = {}
        for exps, c in self.terms.items():
            key = exps[:idx] + exps[idx + 1:]
            v = acc.get(key)
            acc[key] = c if v is None else v + c
        return LaurentPoly(new_vars, acc)

    def push(self, new_vars, images):
        """Monomial substitution t_v -> scalar_v * x^(exps_v).

        ``images`` maps each variable name to (scalar, doubled exponent
        vector over new_vars).  The source polynomial must be integral.
        """
        new_vars = tuple(new_vars)
        width = len(new_vars)
        acc = {}
        for exps, c in self.terms.items():
            key = [0] * width
            coef = c
            for e, name in zip(exps, self.vars):
                if e == 0:
                    continue
                if e % 2:
                    raise HalfIntegerExponent(
                        f"push of half-integer exponent in {name}")
                scalar, vec = images[name]
                k = e // 2
                if not (isinstance(scalar, int) and scalar == 1):
                    coef = coef * (scalar ** k)
                for i in range(width):
                    key[i] += k * vec[i]
            key = tuple(key)
            v = acc.get(key)
            acc[key] = coef if v is None else v + coef
        return LaurentPoly(new_vars, acc)

    def compose_univariate(self, image):
        """Substitute the single variable by an arbitrary Laurent polynomial.

        Only nonnegative integer exponents are allowed (used for Conway
        polynomials in z).
        """
        if len(self.vars) != 1:
            raise ValueError("compose_univariate needs a univariate polynomial")
        out = LaurentPoly.zero(image.vars)
        powers = {0: LaurentPoly.constant(image.vars, 1)}
        for exps, c in sorted(self.terms.items()):
            e = exps[0]
            if e % 2 or e < 0:
                raise HalfIntegerExponent("compose needs nonnegative integers")
            k = e // 2
            while k not in powers:
                m = max(powers)
                powers[m + 1] = powers[m] * image
            out = out + powers[k] * c
        return out

    # -- division ---------------------------------------------------------------

    def div_binomial(self, name, power=1, const=1):
        """Exact division by (t_name^power - const); const must be +-1.

        Raises NotDivisible when the division leaves a remainder.
        """
        if const not in (1, -1):
            raise ValueError("binomial constant must be +-1")
        if self.is_zero():
            return self
        idx = self.vars.index(name)
        step = 2 * power
        rem = dict(self.terms)
        quo = {}
        lam_min = min(e[idx] for e in rem)
        guard = (max(e[idx] for e in rem) - lam_min) // step + 1
        guard = (guard + 2) * (len(rem) + 2)
        while rem:
            guard -= 1
            if guard < 0:
                raise ResourceLimit("binomial division exceeded its work bound")
            top = max(rem, key=lambda e: (e[idx], e))
            if top[idx] - step < lam_min:
                raise NotDivisible(
                    f"not divisible by {name}^{power} - ({const})")
            c = rem.pop(top)
            qkey = top[:idx] + (top[idx] - step,) + top[idx + 1:]
            v = quo.get(qkey)
            quo[qkey] = c if v is None else v + c
            back = rem.get(qkey, Fraction(0)) + const * c
            if scalar_is_zero(back):
                rem.pop(qkey, None)
            else:
                rem[qkey] = back
        return LaurentPoly(self.vars, quo)

    # -- ranges -------------------------------------------------------------------

    def exponent_range(self, name):
        """(min, max) stored exponent of one variable, or None if zero."""
        if self.is_zero():
            return None
        idx = self.vars.index(name)
        vals = [e[idx] for e in self.terms]
        return min(vals), max(vals)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"{v}^{e / 2 if e % 2 else e // 2}"
                for v, e in zip(self.vars, exps) if e)
            c = self.terms[exps]
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


# =========================================================================
# Group algebra Q[H]
# =========================================================================

def element_str(group: FgAbelianGroup, g: GroupElement) -> str:
    """Canonical rendering in Smith coordinates: t's free, s's torsion."""
    bits = [f"t{i + 1}^{v}" for i, v in enumerate(g.free) if v]
    bits += [f"s{j + 1}^{v}" for j, v in enumerate(g.tors) if v]
    return "*".join(bits) if bits else "1"


class GroupAlg:
    """An element of Q[H] as a sparse Smith-normal-form term map."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FgAbelianGroup, terms):
        object.__setattr__(self, "group", group)
        clean = {}
        for g, c in terms.items():
            c = Fraction(c)
            if c:
                clean[g] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("GroupAlg is immutable")

    @staticmethod
    def zero(group):
        return GroupAlg(group, {})

    @staticmethod
    def unit(group, g=None, c=1):
        if g is None:
            g = group.identity
        return GroupAlg(group, {g: Fraction(c)})

    # -- basics ----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coefficient(self, g):
        return self.terms.get(g, Fraction(0))

    def augmentation(self):
        return sum(self.terms.values(), Fraction(0))

    def support(self):
        return sorted(self.terms, key=GroupElement.sort_key)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.terms.values())

    def coefficients_in_localization(self, n: int) -> bool:
        """True when every denominator's prime support divides n."""
        for c in self.terms.values():
            d = c.denominator
            while d > 1:
                g = gcd(d, n)
                if g == 1:
                    return False
                while d % g == 0 and g > 1:
                    d //= g
        return True

    # -- arithmetic ----------------------------------------------------------------

    def _require_same(self, other):
        if self.group is not other.group:
            # distinct cached instances may still present the same group
            if (self.group.n != other.group.n
                    or self.group.invariant_factors != other.group.invariant_factors
                    or self.group.free_rank != other.group.free_rank):
                raise ValueError("group mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupAlg.unit(self.group, c=other)
        self._require_same(other)
        acc = dict(self.terms)
        for g, c in other.terms.items():
            acc[g] = acc.get(g, Fraction(0)) + c
        return GroupAlg(self.group, acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlg(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupAlg.unit(self.group, c=other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupAlg(self.group,
                            {g: c * other for g, c in self.terms.items()})
        self._require_same(other)
        H = self.group
        acc = {}
        for g1, c1 in self.terms.items():
            for g2, c2 in other.terms.items():
                g = H.mul(g1, g2)
                v = acc.get(g)
                acc[g] = c1 * c2 if v is None else v + c1 * c2
        return GroupAlg(self.group, acc)

    __rmul__ = __mul__

    def mul_element(self, g, c=1):
        H = self.group
        return GroupAlg(H, {H.mul(h, g): cv * c for h, cv in self.terms.items()})

    def bar(self):
        """The involution h -> h^(-1)."""
        H = self.group
        return GroupAlg(H, {H.inv(g): c for g, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GroupAlg.unit(self.group, c=other)
        if not isinstance(other, GroupAlg):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{self.terms[g]}*{element_str(self.group, g)}"
            for g in self.support())


def push_to_group_algebra(p: LaurentPoly, group: FgAbelianGroup,
                          assignment: dict) -> GroupAlg:
    """Evaluate an integral Laurent polynomial at group elements.

    ``assignment`` maps variable names to GroupElements.  Half-integer
    exponents raise HalfIntegerExponent.
    """
    acc = {}
    for int_exps, c in p.integer_pairs():
        r = scalar_rational(c)
        if r is None:
            raise ValueError("group-algebra push needs rational coefficients")
        g = group.identity
        for e, name in zip(int_exps, p.vars):
            if e:
                g = group.mul(g, group.pow(assignment[name], e))
        v = acc.get(g)
        acc[g] = r if v is None else v + r
    return GroupAlg(group, acc)


def map_group_algebra(a: GroupAlg, target: FgAbelianGroup,
                      gen_images: list, check_relations: bool = True) -> GroupAlg:
    """Apply the homomorphism sending source generators to gen_images."""
    H = a.group
    if check_relations:
        for col in H.relations:
            img = target.identity
            for e, gi in zip(col, gen_images):
                if e:
                    img = target.mul(img, target.pow(gi, e))
            if img != target.identity:
                raise ValueError("map does not kill a source relation")
    acc = {}
    for g, c in a.terms.items():
        word = H.generator_word(g)
        img = target.identity
        for e, gi in zip(word, gen_images):
            if e:
                img = target.mul(img, target.pow(gi, e))
        v = acc.get(img)
        acc[img] = c if v is None else v + c
    return GroupAlg(target, acc)


# =========================================================================
# Exact division by (h - 1) and the componentwise reduced inverse
# =========================================================================

def exact_divide(a: GroupAlg, h: GroupElement) -> GroupAlg:
    """The unique q with q * (h - 1) = a; h must have infinite order.

    Greedy top-down peeling along the direction of h's free part.  The
    division either terminates with zero remainder or provably fails.
    """
    H = a.group
    if H.is_torsion(h):
        raise ValueError("division direction must have infinite order")
    if a.is_zero():
        return a
    hv = h.free

    def lam(g):
        return sum(x * y for x, y in zip(g.free, hv))

    step = lam(h)
    rem = dict(a.terms)
    quo = {}
    lam_min = min(lam(g) for g in rem)
    guard = ((max(lam(g) for g in rem) - lam_min) // step + 2) * (len(rem) + 2)
    hinv = H.inv(h)
    while rem:
        guard -= 1
        if guard < 0:
            raise ResourceLimit("exact division exceeded its work bound")
        top = max(rem, key=lambda g: (lam(g), g.sort_key()))
        if lam(top) - step < lam_min:
            raise NotDivisible("group-algebra element not divisible by (h - 1)")
        c = rem.pop(top)
        qg = H.mul(top, hinv)
        v = quo.get(qg)
        quo[qg] = c if v is None else v + c
        back = rem.get(qg, Fraction(0)) + c
        if back:
            rem[qg] = back
        else:
            rem.pop(qg, None)
    return GroupAlg(H, quo)


def reduced_inverse(a: GroupAlg) -> GroupAlg:
    """Componentwise inverse over the semisimple part indexed by Tors H.

    The element must be supported on torsion.  Components where a
    character kills the element invert to zero; the reassembled answer
    must be rational in every coefficient.
    """
    H = a.group
    for g in a.terms:
        if not H.is_torsion(g):
            raise ValueError("reduced inverse needs torsion support")
    chars = H.torsion_characters()
    N = H.exponent
    tors = H.torsion_elements()
    size = Fraction(len(tors))
    if N == 1:
        c = a.coefficient(H.identity)
        if c == 0:
            return GroupAlg.zero(H)
        return GroupAlg.unit(H, c=1 / c)
    # character values of a
    vals = []
    for chi in chars:
        acc = Cyclotomic.from_rational(0, N)
        for g, c in a.terms.items():
            acc = acc + Cyclotomic.root(N, chi.zeta_exponent(g)) * c
        vals.append(acc.inverse() if not acc.is_zero() else None)
    out = {}
    for s in tors:
        acc = Cyclotomic.from_rational(0, N)
        for chi, v in zip(chars, vals):
            if v is not None:
                acc = acc + Cyclotomic.root(N, (-chi.zeta_exponent(s)) % N) * v
        r = acc.is_rational()
        if r is None:
            raise NonRationalReassembly("reduced inverse is not rational")
        if r:
            out[s] = r / size
    return GroupAlg(H, out)


# =========================================================================
# Character transform between Q[H] and cyclotomic Laurent components
# =========================================================================

def free_variable_names(group: FgAbelianGroup) -> tuple:
    return tuple(f"x{i + 1}" for i in range(group.free_rank))


def character_decompose(a: GroupAlg, chars=None) -> list:
    """Components of a in the splitting of Q[H] along Tors H characters.

    Returns [(character, LaurentPoly over the free variables with
    cyclotomic coefficients)] in the canonical character order.
    """
    H = a.group
    if chars is None:
        chars = H.torsion_characters()
    names = free_variable_names(H)
    out = []
    for chi in chars:
        acc = {}
        for g, c in a.terms.items():
            key = tuple(2 * e for e in g.free)
            v = Cyclotomic.root(chi.order_n, chi.zeta_exponent(g)) * c
            old = acc.get(key)
            acc[key] = v if old is None else old + v
        out.append((chi, LaurentPoly(names, acc)))
    return out


def character_reassemble(group: FgAbelianGroup, components: list) -> GroupAlg:
    """Inverse character transform; raises if any coefficient is irrational."""
    tors = group.torsion_elements()
    size = Fraction(len(tors))
    exps = set()
    for _, poly in components:
        exps.update(poly.terms)
    out = {}
    for u in sorted(exps):
        if any(e % 2 for e in u):
            raise HalfIntegerExponent("reassembly off the integral lattice")
        free = tuple(e // 2 for e in u)
        for s in tors:
            acc = None
            for chi, poly in components:
                c = poly.terms.get(u)
                if c is None:
                    continue
                w = Cyclotomic.root(chi.order_n,
                                    (-chi.zeta_exponent(s)) % chi.order_n) * c
                acc = w if acc is None else acc + w
            if acc is None:
                continue
            r = scalar_rational(acc)
            if r is None:
                raise NonRationalReassembly(
                    "character components do not reassemble rationally")
            if r:
                out[GroupElement(free, s.tors)] = r / size
    return GroupAlg(group, out)


# =========================================================================
# Fractions num / prod (h_j - 1)
# =========================================================================

def denominator_polynomial(group: FgAbelianGroup, dens) -> GroupAlg:
    out = GroupAlg.unit(group)
    for h in dens:
        out = out * (GroupAlg.unit(group, h) - GroupAlg.unit(group))
    return out


class QHFraction:
    """num / prod (h_j - 1) with every h_j of infinite order."""

    __slots__ = ("num", "dens")

    def __init__(self, num: GroupAlg, dens=()):
        H = num.group
        for h in dens:
            if H.is_torsion(h):
                raise ValueError("denominators must have infinite order")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "dens",
                           tuple(sorted(dens, key=GroupElement.sort_key)))

    def __setattr__(self, *a):
        raise AttributeError("QHFraction is immutable")

    @property
    def group(self):
        return self.num.group

    @staticmethod
    def from_poly(a: GroupAlg):
        return QHFraction(a, ())

    def is_polynomial(self):
        return not self.dens

    def as_polynomial(self) -> GroupAlg:
        x = self.normalize()
        if x.dens:
            raise NotDivisible(
                f"fraction keeps {len(x.dens)} denominator factor(s)")
        return x.num

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return QHFraction(-self.num, self.dens)

    def _common(self, other):
        c1 = Counter(self.dens)
        c2 = Counter(other.dens)
        target = c1 | c2
        extra1 = list((target - c1).elements())
        extra2 = list((target - c2).elements())
        n1 = self.num * denominator_polynomial(self.group, extra1)
        n2 = other.num * denominator_polynomial(self.group, extra2)
        return n1, n2, tuple(sorted(target.elements(),
                                    key=GroupElement.sort_key))

    def __add__(self, other):
        if isinstance(other, GroupAlg):
            other = QHFraction.from_poly(other)
        n1, n2, dens = self._common(other)
        return QHFraction(n1 + n2, dens)

    def __sub__(self, other):
        if isinstance(other, GroupAlg):
            other = QHFraction.from_poly(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QHFraction(self.num * other, self.dens)
        if isinstance(other, GroupAlg):
            other = QHFraction.from_poly(other)
        return QHFraction(self.num * other.num, self.dens + other.dens)

    __rmul__ = __mul__

    def mul_element(self, g, c=1):
        return QHFraction(self.num.mul_element(g, c), self.dens)

    def bar(self):
        """Involution: bar(num) / prod (h^-1 - 1) rewritten over the same dens."""
        H = self.group
        num = self.num.bar()
        for h in self.dens:
            num = num.mul_element(h, -1)
        return QHFraction(num, self.dens)

    def __eq__(self, other):
        if isinstance(other, GroupAlg):
            other = QHFraction.from_poly(other)
        if not isinstance(other, QHFraction):
            return NotImplemented
        n1, n2, _ = self._common(other)
        return n1 == n2

    def __hash__(self):
        raise TypeError("QHFraction is unhashable; compare with ==")

    def normalize(self) -> "QHFraction":
        """Cancel every denominator factor that divides the numerator."""
        num = self.num
        left = list(self.dens)
        changed = True
        while changed and left:
            changed = False
            for i, h in enumerate(left):
                if num.is_zero():
                    return QHFraction(num, ())
                try:
                    num = exact_divide(num, h)
                except NotDivisible:
                    continue
                left.pop(i)
                changed = True
                break
        if num.is_zero():
            return QHFraction(num, ())
        return QHFraction(num, tuple(left))

    def __repr__(self):
        num = repr(self.num)
        if not self.dens:
            return num
        counts = Counter(self.dens)
        bits = []
        for h in sorted(counts, key=GroupElement.sort_key):
            e = counts[h]
            base = f"({element_str(self.group, h)} - 1)"
            bits.append(base + (f"^{e}" if e > 1 else ""))
        return f"({num}) / " + " * ".join(bits)


# =========================================================================
# phi_# evaluation into cyclotomic Laurent fractions
# =========================================================================

class FieldFraction:
    """A plain num/den pair of Laurent polynomials; equality cross-multiplies."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None):
        if den is None:
            den = LaurentPoly.constant(num.vars, 1)
        if den.is_zero():
            raise ZeroDivisionError("field fraction with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("FieldFraction is immutable")

    def __add__(self, other):
        return FieldFraction(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    def __neg__(self):
        return FieldFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic, LaurentPoly)):
            return FieldFraction(self.num * other, self.den)
        return FieldFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def over(self, poly: LaurentPoly):
        return FieldFraction(self.num, self.den * poly)

    def conjugate(self):
        return FieldFraction(self.num.bar(), self.den.bar())

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic, LaurentPoly)):
            other = FieldFraction(
                other if isinstance(other, LaurentPoly)
                else LaurentPoly.constant(self.num.vars, other))
        if not isinstance(other, FieldFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("FieldFraction is unhashable; compare with ==")

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"


class PhiMap:
    """A valuation of a presented group into cyclotomic Laurent monomials.

    Generators of ``source`` are sent to zeta_N^(ze_i) * x^(vec_i) with
    vec on the doubled lattice of ``variables``.  Well-definedness on
    the presentation is checked once at construction.
    """

    __slots__ = ("source", "variables", "order_n", "images")

    def __init__(self, source: FgAbelianGroup, variables, order_n: int, images):
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "order_n", order_n)
        object.__setattr__(self, "images",
                           [(int(ze), tuple(int(v) for v in vec))
                            for ze, vec in images])
        for col in source.relations:
            ze, vec = self._combine(col)
            if ze != 0 or any(vec):
                raise ValueError("phi does not kill a presentation relation")

    def __setattr__(self, *a):
        raise AttributeError("PhiMap is immutable")

    def _combine(self, word):
        ze = 0
        vec = [0] * len(self.variables)
        for w, (z, v) in zip(word, self.images):
            if w:
                ze += w * z
                for i in range(len(vec)):
                    vec[i] += w * v[i]
        return ze % self.order_n, tuple(vec)

    def of_element(self, g: GroupElement):
        """(zeta exponent, doubled monomial exponents) of phi(g)."""
        return self._combine(self.source.generator_word(g))

    def maps_to_one(self, g: GroupElement) -> bool:
        ze, vec = self.of_element(g)
        return ze == 0 and not any(vec)

    def monomial(self, g: GroupElement) -> LaurentPoly:
        ze, vec = self.of_element(g)
        c = Cyclotomic.root(self.order_n, ze) if self.order_n > 1 else Fraction(1)
        return LaurentPoly(self.variables, {vec: c})

    def of_group_algebra(self, a: GroupAlg) -> LaurentPoly:
        acc = LaurentPoly.zero(self.variables)
        for g, c in a.terms.items():
            acc = acc + self.monomial(g) * c
        return acc


def apply_phi_sharp(x: QHFraction, phi: PhiMap) -> FieldFraction:
    """Evaluate phi_# on a controlled fraction.

    Denominator factors killed by phi are cancelled against the
    numerator after padding with a non-vanishing pivot direction; the
    filtration membership that justifies the padding is exactly what
    NotInDomain reports when division fails.
    """
    x = x.normalize()
    H = x.num.group
    vanishing = [h for h in x.dens if phi.maps_to_one(h)]
    surviving = [h for h in x.dens if not phi.maps_to_one(h)]
    num = x.num
    den = LaurentPoly.constant(phi.variables, 1)
    if vanishing:
        pivot = None
        for i in range(H.n):
            g = H.generator(i)
            if not phi.maps_to_one(g) and not H.is_torsion(g):
                pivot = g
                break
        if pivot is None:
            raise NotInDomain("no direction survives phi to pad the division")
        pad = GroupAlg.unit(H, pivot) - GroupAlg.unit(H)
        for _ in vanishing:
            num = num * pad
        for h in vanishing:
            try:
                num = exact_divide(num, h)
            except NotDivisible as exc:
                raise NotInDomain("fraction outside the domain of phi_#") from exc
        for _ in vanishing:
            den = den * (phi.monomial(pivot) - 1)
    for h in surviving:
        den = den * (phi.monomial(h) - 1)
    return FieldFraction(phi.of_group_algebra(num), den)


# =========================================================================
# Transfer along a finite-kernel projection
# =========================================================================

def transfer(a: GroupAlg, H: FgAbelianGroup, gen_images: list,
             kill: list) -> GroupAlg:
    """Average preimages: Q[H'] -> Q[H] through H_J = H / <kill>.

    ``gen_images`` sends the presentation generators of a's group to H;
    composition with H -> H_J must kill a's presentation relations
    (asserted).  Each support element is replaced by the average of its
    full p-fiber, weighted 1/|Ker p|.
    """
    proj = H.quotient_by(kill)
    ker = proj.kernel_elements()
    weight = Fraction(1, len(ker))
    src = a.group
    for col in src.relations:
        img = H.identity
        for e, gi in zip(col, gen_images):
            if e:
                img = H.mul(img, H.pow(gi, e))
        if proj(img) != proj.quotient.identity:
            raise ValueError("transfer map is not defined on a relation")
    acc = {}
    for g, c in a.terms.items():
        word = src.generator_word(g)
        img = H.identity
        for e, gi in zip(word, gen_images):
            if e:
                img = H.mul(img, H.pow(gi, e))
        y = proj(img)
        h0 = proj.preimage(y)
        if proj(h0) != y:
            raise AssertionError("preimage solver failed")
        for kappa in ker:
            h = H.mul(h0, kappa)
            v = acc.get(h)
            acc[h] = c * weight if v is None else v + c * weight
    return GroupAlg(H, acc)


# =========================================================================
# Series coefficient extraction for b1 = 1
# =========================================================================

def series_coefficient(x: QHFraction, direction: GroupElement,
                       target: GroupElement) -> Fraction:
    """Coefficient of ``target`` in the power-series expansion of x.

    The expansion inverts each (h - 1) as -1 - h - h^2 - ... when h is
    positive with respect to ``direction`` and as h^-1 + h^-2 + ... when
    negative.  ``direction`` must project to a generator of H/Tors; H
    must have free rank 1.
    """
    H = x.group
    if H.free_rank != 1:
        raise DirectionNotPrimitive("series expansion needs free rank 1")
    d = direction.free[0] if direction.free else 0
    if d not in (1, -1):
        raise DirectionNotPrimitive(
            "direction must project to a generator of H/Tors")

    def deg(g):
        return g.free[0] * d

    min_degs = []
    for h in x.dens:
        lam = deg(h)
        min_degs.append(0 if lam > 0 else -lam)
    cap_total = deg(target)
    partial = dict(x.num.terms)
    remaining = sum(min_degs)
    for h, mdeg in zip(x.dens, min_degs):
        remaining -= mdeg
        lam = deg(h)
        cap = cap_total - remaining
        nxt = {}
        for g, c in partial.items():
            room = cap - deg(g)
            if lam > 0:
                # (h-1)^-1 = -(1 + h + h^2 + ...)
                n = 0
                acc_el = g
                while n * lam <= room:
                    v = nxt.get(acc_el)
                    nxt[acc_el] = -c if v is None else v - c
                    n += 1
                    acc_el = H.mul(acc_el, h)
            else:
                # (h-1)^-1 = h^-1 + h^-2 + ...
                hinv = H.inv(h)
                n = 1
                acc_el = H.mul(g, hinv)
                while n * (-lam) <= room:
                    v = nxt.get(acc_el)
                    nxt[acc_el] = c if v is None else v + c
                    n += 1
                    acc_el = H.mul(acc_el, hinv)
        partial = {g: c for g, c in nxt.items() if c}
    return partial.get(target, Fraction(0))
