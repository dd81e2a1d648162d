"""Presentation-based (co)homology: abelianisations, H^1 via Fox calculus,
and (co)invariants of matrix-group actions.

Coefficient rings are Z (modulus 0) and Z/m.  H^1 of a presented group
with a module action is computed as Z^1/B^1, where Z^1 is the joint
kernel of the Fox-derivative matrices of the relators and B^1 the image
of m |-> ((rho(x_i) - 1) m).
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgroups import FinAbGroup
from .linalg import (IntMatrix, column_basis, cokernel_presentation, hstack,
                     inverse_mod, kernel_basis, solve_exact, vstack)


@dataclass(frozen=True)
class Presentation:
    """Relators are words over signed 1-based generator indices."""

    num_generators: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_generators < 0:
            raise ValueError("generator count must be nonnegative")
        rel = tuple(tuple(int(i) for i in w) for w in self.relators)
        object.__setattr__(self, "relators", rel)
        for word in rel:
            for letter in word:
                if letter == 0 or abs(letter) > self.num_generators:
                    raise ValueError(f"letter {letter} out of range")

    @classmethod
    def from_json_dict(cls, d: dict) -> "Presentation":
        return cls(int(d["gens"]), tuple(tuple(w) for w in d["relators"]))

    def to_json_dict(self) -> dict:
        return {"gens": self.num_generators,
                "relators": [list(w) for w in self.relators]}


@dataclass(frozen=True)
class GModule:
    """A module over Z or Z/m with one invertible action matrix per generator."""

    dimension: int
    modulus: int
    actions: tuple[IntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        if self.modulus < 0:
            raise ValueError("modulus must be 0 (= Z) or positive")
        for a in self.actions:
            if a.rows != self.dimension or a.cols != self.dimension:
                raise ValueError("action matrix has the wrong size")
        # invertibility over the coefficient ring, checked eagerly
        for a in self.actions:
            inverse_mod(a, self.modulus)

    @classmethod
    def from_json_dict(cls, d: dict) -> "GModule":
        return cls(int(d["dimension"]), int(d.get("modulus", 0)),
                   tuple(IntMatrix(a) for a in d["actions"]))

    def to_json_dict(self) -> dict:
        return {"dimension": self.dimension, "modulus": self.modulus,
                "actions": [a.to_lists() for a in self.actions]}

    def reduce(self, m: IntMatrix) -> IntMatrix:
        return m.mod(self.modulus) if self.modulus else m

    def action(self, letter: int) -> IntMatrix:
        """Matrix of a signed generator letter."""
        a = self.actions[abs(letter) - 1]
        if letter < 0:
            a = inverse_mod(a, self.modulus)
        return self.reduce(a)

    def word_action(self, word) -> IntMatrix:
        m = IntMatrix.identity(self.dimension)
        for letter in word:
            m = self.reduce(m @ self.action(letter))
        return m


def fox_derivative(word, generator_index: int, module: GModule) -> IntMatrix:
    """Fox derivative of a word with respect to generator ``generator_index``
    (1-based), evaluated through the module action.

    Satisfies d(uv) = d(u) + rho(u) d(v), d(x)/dx = I and
    d(x^-1)/dx = -rho(x^-1).
    """
    d = module.dimension
    total = IntMatrix.zeros(d, d)
    prefix = IntMatrix.identity(d)
    for letter in word:
        if letter == generator_index:
            total = total + prefix
        elif letter == -generator_index:
            total = total - module.reduce(prefix @ module.action(letter))
        prefix = module.reduce(prefix @ module.action(letter))
    return module.reduce(total)


def abelianization(p: Presentation) -> FinAbGroup:
    """Cokernel of the relator exponent matrix."""
    cols = []
    for word in p.relators:
        col = [0] * p.num_generators
        for letter in word:
            col[abs(letter) - 1] += 1 if letter > 0 else -1
        cols.append(col)
    m = IntMatrix.from_columns(cols, rows=p.num_generators)
    return cokernel_presentation(m)[0]


def _lattice_of_solutions(f: IntMatrix, modulus: int) -> IntMatrix:
    """Basis of the lattice {x in Z^n : f x = 0 over the ring}.

    For modulus m > 0 this is the preimage in Z^n of the mod-m solution
    set, a full-rank lattice containing m Z^n.
    """
    if modulus == 0:
        return kernel_basis(f)
    aug = hstack(f, IntMatrix.identity(f.rows).scaled(modulus))
    full = kernel_basis(aug)
    proj = IntMatrix(full.data[:f.cols], cols=full.cols)
    return column_basis(proj)


def _subquotient(zspan: IntMatrix, bgens: IntMatrix, modulus: int) -> FinAbGroup:
    """(lattice spanned by zspan) / (span of bgens + modulus * Z^n)."""
    n = zspan.rows
    if modulus:
        bgens = hstack(bgens, IntMatrix.identity(n).scaled(modulus))
    basis = column_basis(zspan)
    if basis.cols == 0:
        return FinAbGroup.trivial()
    coords = solve_exact(basis, bgens)
    return cokernel_presentation(coords)[0]


def h1(p: Presentation, module: GModule) -> FinAbGroup:
    """First cohomology of the presented group with the given coefficients.

    The module action must satisfy the relators; this is checked and a
    violation raises ValueError.
    """
    if len(module.actions) != p.num_generators:
        raise ValueError("one action matrix per generator is required")
    d = module.dimension
    ident = IntMatrix.identity(d)
    for word in p.relators:
        if module.word_action(word) != module.reduce(ident):
            raise ValueError(f"action does not satisfy the relator {word}")
    k = p.num_generators
    if p.relators:
        blocks = []
        for word in p.relators:
            row = [fox_derivative(word, i + 1, module) for i in range(k)]
            blocks.append(hstack(*row))
        f = vstack(*blocks)
    else:
        f = IntMatrix.zeros(0, k * d)
    cocycles = _lattice_of_solutions(f, module.modulus)
    principal = vstack(*[module.reduce(a - ident) for a in module.actions]) \
        if k else IntMatrix.zeros(0, d)
    return _subquotient(cocycles, principal, module.modulus)


def _check_square_same(generators) -> int:
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator matrix is required")
    n = gens[0].rows
    for g in gens:
        if not g.is_square or g.rows != n:
            raise ValueError("generators must be square matrices of equal size")
    return n


def coinvariants(generators, modulus: int = 0) -> FinAbGroup:
    """Cokernel of the stacked (gamma - 1) over Z or Z/m."""
    gens = list(generators)
    n = _check_square_same(gens)
    ident = IntMatrix.identity(n)
    cols = hstack(*[(g - ident) for g in gens])
    if modulus:
        cols = hstack(cols, ident.scaled(modulus))
    return cokernel_presentation(cols)[0]


def invariants(generators, modulus: int = 0) -> FinAbGroup:
    """Joint kernel of the (gamma - 1) over the coefficient ring."""
    gens = list(generators)
    n = _check_square_same(gens)
    ident = IntMatrix.identity(n)
    f = vstack(*[(g - ident) for g in gens])
    if modulus == 0:
        return FinAbGroup.free(kernel_basis(f).cols)
    sol = _lattice_of_solutions(f, modulus)
    return _subquotient(sol, IntMatrix.zeros(n, 0), modulus)


def h1_free_product_of_cyclics(orders, actions, modulus: int) -> FinAbGroup:
    """H^1 of a free product of cyclic groups, by the tree formula.

    ``orders[i]`` is the order of the i-th free factor (0 = infinite
    cyclic) and ``actions[i]`` the matrix of its generator.  Only used as
    an independent cross-check of the Fox-calculus route, hence restricted
    to Z/m coefficients where the count argument below is available.

    For G = A_1 * ... * A_s acting on a finite module M, the action of the
    tree with trivial edge stabilisers gives
    |H^1(G)| = prod |H^1(A_i)| * |M|^(s-1) / prod [M : M^{A_i}] * |M^G| etc.;
    here we assemble the groups directly from crossed homomorphisms.
    """
    if modulus <= 0:
        raise ValueError("cross-check formula is for finite coefficients")
    mats = [m.mod(modulus) for m in actions]
    n = mats[0].rows
    ident = IntMatrix.identity(n)

    def cyclic_z1(order, a):
        if order == 0:
            return _lattice_of_solutions(IntMatrix.zeros(0, n), modulus)
        norm = IntMatrix.zeros(n, n)
        power = ident
        for _ in range(order):
            norm = (norm + power).mod(modulus)
            power = (power @ a).mod(modulus)
        return _lattice_of_solutions(norm, modulus)

    # crossed homs on the free product = product of the factors' cocycles;
    # principal ones are the diagonal image of M
    z_blocks = []
    for order, a in zip(orders, mats):
        z_blocks.append(cyclic_z1(order, a))
    s = len(mats)
    big = []
    for i, blk in enumerate(z_blocks):
        rows_before = i * n
        rows_after = (s - i - 1) * n
        big.append(vstack(IntMatrix.zeros(rows_before, blk.cols), blk,
                          IntMatrix.zeros(rows_after, blk.cols)))
    zspan = hstack(*big)
    principal = vstack(*[(a - ident).mod(modulus) for a in mats])
    return _subquotient(zspan, principal, modulus)
