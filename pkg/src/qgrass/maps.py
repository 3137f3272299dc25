"""Semilinear maps and the Grassmannian transformations they induce, map
algebra, form pullback, and detection of transformations induced between
Grassmannians of different dimensions.
"""

from __future__ import annotations

from .forms import BilinearForm
from .grassmann import GrassmannMap, Subspace, join, meet
from .linalg import Mat, SingularMatrixError


class SemilinearMap:
    """v -> matrix . sigma(v): the automorphism acts on coordinates first.

    Satisfies f(a x) = sigma(a) f(x); the matrix must be invertible.
    """

    __slots__ = ("field", "n", "sigma", "matrix")

    def __init__(self, field, matrix, sigma=None):
        if matrix.nrows != matrix.ncols:
            raise ValueError("semilinear map needs a square matrix")
        if matrix.rank() != matrix.nrows:
            raise SingularMatrixError("semilinear map needs an invertible matrix")
        self.field = field
        self.n = matrix.nrows
        self.matrix = matrix
        self.sigma = sigma if sigma is not None else field.identity_automorphism

    @classmethod
    def identity(cls, field, n):
        return cls(field, Mat.identity(field, n))

    def apply_vector(self, v):
        return self.matrix.apply(tuple(self.sigma(x) for x in v))

    def apply_subspace(self, s):
        rows = Mat(self.field, [tuple(self.sigma(x) for x in r) for r in s.rows])
        image = rows.mul(self.matrix.transpose())
        return Subspace.span(self.field, s.n, image.rows)

    def compose(self, other):
        """self after other; automorphism exponents add."""
        if other.field.q != self.field.q or other.n != self.n:
            raise ValueError("maps on different spaces")
        m = self.matrix.mul(other.matrix.map_entries(self.sigma))
        return SemilinearMap(self.field, m, self.sigma.compose(other.sigma))

    def inverse(self):
        inv_sigma = self.sigma.inverse()
        m = self.matrix.inv().map_entries(inv_sigma)
        return SemilinearMap(self.field, m, inv_sigma)

    def scaled(self, a):
        if a == 0:
            raise ValueError("zero scaling")
        return SemilinearMap(self.field, self.matrix.scale(a), self.sigma)

    def normal_form(self):
        """Rescale so the first nonzero matrix entry is 1; induced maps see
        semilinear maps only up to scalars."""
        for r in self.matrix.rows:
            for x in r:
                if x:
                    return self.scaled(self.field.inv(x))
        raise SingularMatrixError("zero matrix")

    def same_projective(self, other):
        return (
            self.field.q == other.field.q
            and self.sigma == other.sigma
            and self.normal_form().matrix == other.normal_form().matrix
        )

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearMap)
            and self.field.q == other.field.q
            and self.sigma == other.sigma
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.field.q, self.sigma.exp, self.matrix))

    def __repr__(self):
        return f"SemilinearMap(GF({self.field.q})^{self.n}, sigma=p^{self.sigma.exp})"


def induced_map(space, f, k):
    """The bijection of G_k defined by a semilinear map of the ambient space."""
    if f.n != space.n or f.field.q != space.field.q:
        raise ValueError("map and space do not match")
    gk = space.grassmannian(k)
    return GrassmannMap(gk, gk, (gk.index(f.apply_subspace(s)) for s in gk))


def pullback_form(f, form):
    """f*(Om)(x, y) = Om(f(x), f(y)) for a linear (sigma = Id) map f."""
    if not f.sigma.is_identity:
        raise ValueError("pullback is implemented for linear maps only")
    if f.n != form.n or f.field.q != form.field.q:
        raise ValueError("map and form do not match")
    m = f.matrix
    g = m.transpose().map_entries(form.sigma1).mul(form.gram).mul(m.map_entries(form.sigma2))
    return BilinearForm(form.field, g, form.sigma1, form.sigma2)


def _incidence_image_plane(space, image_indices, k, m):
    """The plane s with G_k(s) equal to the given image set, or None."""
    gk = space.grassmannian(k)
    members = [gk[i] for i in image_indices]
    if not members:
        return None
    acc = members[0]
    for s in members[1:]:
        acc = join(acc, s) if m > k else meet(acc, s)
    if acc.k != m:
        return None
    if space.incidence(k, m)[space.grassmannian(m).index(acc)] != tuple(sorted(image_indices)):
        return None
    return acc


def induces(space, f, m):
    """The transformation of G_m induced by a transformation f of G_k, if any.

    Both directions are required: every incidence set G_k(s) must map onto an
    incidence set under f and under f or its inverse; otherwise None.
    """
    k = f.domain.k
    if m == k:
        raise ValueError("induced transformations need m != k")
    if f.codomain.k != k:
        raise ValueError("induces applies to transformations of one Grassmannian")
    gm = space.grassmannian(m)
    inc = space.incidence(k, m)
    inv_table = f.inverse().table
    forward = []
    for si in range(len(gm)):
        img = [f.table[i] for i in inc[si]]
        s_img = _incidence_image_plane(space, img, k, m)
        if s_img is None:
            return None
        pre = [inv_table[i] for i in inc[si]]
        if _incidence_image_plane(space, pre, k, m) is None:
            return None
        forward.append(gm.index(s_img))
    if len(set(forward)) != len(gm):
        return None
    return GrassmannMap(gm, gm, forward)
