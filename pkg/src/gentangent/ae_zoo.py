"""Builders and classifiers for (alpha, epsilon)-structures on the fiber.

alpha is the square sign of the polynomial structure (op^2 = alpha Id) and
epsilon the isometry sign against the chosen metric (G(op u, op v) =
epsilon G(u, v)).  The four sign pairs name the product / para-Hermitian /
Hermitian / Norden families.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .canonical import g0, omega0
from .core import (
    SKEW,
    SYMMETRIC,
    BaseForm,
    BilinearForm,
    BlockOperator,
    DEFAULT_TOL,
    PolynomialClass,
    Tolerance,
    close,
    dual_map,
    is_degenerate,
    musicals,
    polynomial_class,
    signature,
)
from .errors import (
    DegenerateFormError,
    DimensionError,
    IncompatiblePairError,
    NotPolynomialError,
    ProjectionSingularError,
    UnknownFamilyError,
)
from .gen_metrics import induced_metric

PRODUCT_RIEMANNIAN = "ProductRiemannian"
PRODUCT_PSEUDO_RIEMANNIAN = "ProductPseudoRiemannian"
PARA_NORDEN = "ParaNorden"
PARA_HERMITIAN = "ParaHermitian"
HERMITIAN = "Hermitian"
INDEFINITE_HERMITIAN = "IndefiniteHermitian"
NORDEN = "Norden"
INCOMPATIBLE = "Incompatible"

TWIN_METRIC = "TwinMetric"
FUNDAMENTAL_SYMPLECTIC = "FundamentalSymplectic"


@dataclass(frozen=True)
class StructureClass:
    name: str
    alpha: int | None = None
    epsilon: int | None = None
    signature: tuple | None = None


@dataclass(frozen=True)
class FundamentalTensor:
    form: BilinearForm
    kind: str


@dataclass(frozen=True)
class AeManifoldData:
    """A base-fiber pair (J, g) with J^2 = alpha I and g(J., J.) = epsilon g."""

    J: np.ndarray
    g: BaseForm
    alpha: int
    epsilon: int

    def __post_init__(self):
        j = np.asarray(self.J, dtype=float)
        object.__setattr__(self, "J", j)
        if j.shape != (self.g.n, self.g.n):
            raise DimensionError("J and g dimensions differ")
        if self.alpha not in (+1, -1) or self.epsilon not in (+1, -1):
            raise ValueError("alpha and epsilon must be +1 or -1")

    @property
    def n(self) -> int:
        return self.g.n

    def validate(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        ident = np.eye(self.n)
        gm = self.g.gram
        return close(self.J @ self.J, self.alpha * ident, tol) and close(
            self.J.T @ gm @ self.J, self.epsilon * gm, tol
        )


def base_fundamental(data: AeManifoldData) -> BaseForm:
    """The fiber-level tensor phi(X, Y) = g(J X, Y)."""
    kind = SYMMETRIC if data.alpha * data.epsilon == +1 else SKEW
    return BaseForm(data.J.T @ data.g.gram, kind)


def isometry_sign(op: BlockOperator, metric: BilinearForm, tol: Tolerance = DEFAULT_TOL):
    """epsilon with M.T Gram M = epsilon Gram, or None if neither sign fits."""
    m = op.assemble()
    pulled = m.T @ metric.gram @ m
    for eps in (+1, -1):
        if close(pulled, eps * metric.gram, tol):
            return eps
    return None


def classify_pair(op: BlockOperator, metric: BilinearForm, tol: Tolerance = DEFAULT_TOL) -> StructureClass:
    """Classify (op, metric) into the (alpha, epsilon) family table."""
    pc = polynomial_class(op, tol)
    if pc.kind == "neither":
        return StructureClass(INCOMPATIBLE)
    eps = isometry_sign(op, metric, tol)
    if eps is None:
        return StructureClass(INCOMPATIBLE)
    sig = signature(metric, tol)
    riemannian = sig[1] == 0
    alpha = pc.alpha
    if alpha == -1:
        if eps == -1:
            name = NORDEN
        else:
            name = HERMITIAN if riemannian else INDEFINITE_HERMITIAN
    else:
        if eps == -1:
            name = PARA_HERMITIAN
        elif riemannian:
            name = PARA_NORDEN if pc.is_paracomplex else PRODUCT_RIEMANNIAN
        else:
            name = PRODUCT_PSEUDO_RIEMANNIAN
    return StructureClass(name, alpha, eps, sig)


def fundamental_tensor(op: BlockOperator, metric: BilinearForm, tol: Tolerance = DEFAULT_TOL) -> FundamentalTensor:
    """The form u, v -> G(op u, v) of a compatible pair."""
    cls = classify_pair(op, metric, tol)
    if cls.name == INCOMPATIBLE:
        raise IncompatiblePairError("pair is not an (alpha, epsilon)-structure")
    gram = op.assemble().T @ metric.gram
    kind = TWIN_METRIC if cls.alpha * cls.epsilon == +1 else FUNDAMENTAL_SYMPLECTIC
    form_kind = SYMMETRIC if kind == TWIN_METRIC else SKEW
    return FundamentalTensor(BilinearForm(gram, form_kind), kind)


def check_flat_sharp_identities(data: AeManifoldData, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Matrix identities linking the musical maps of g, phi and J.

    flat_phi = flat_g J = alpha eps J* flat_g and
    eps sharp_phi = sharp_g J* = alpha eps J sharp_g.
    """
    phi = base_fundamental(data)
    flat_phi, sharp_phi = musicals(phi, tol)
    flat_g, sharp_g = musicals(data.g, tol)
    ae = data.alpha * data.epsilon
    j, jd = data.J, dual_map(data.J)
    ok = close(flat_phi, flat_g @ j, tol)
    ok = ok and close(flat_phi, ae * jd @ flat_g, tol)
    ok = ok and close(data.epsilon * sharp_phi, sharp_g @ jd, tol)
    ok = ok and close(data.epsilon * sharp_phi, ae * j @ sharp_g, tol)
    return ok


def build_musical(b: BaseForm, sign: int, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Anti-diagonal structure [[0, sign*sharp], [flat, 0]].

    sign = -1 squares to -I (complex), sign = +1 to +I (paracomplex), for
    symmetric and skew base forms alike.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    flat, sharp = musicals(b, tol)
    zero = np.zeros((b.n, b.n))
    return BlockOperator(zero, sign * sharp, flat, zero)


def build_diagonal(a, lam: int, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Diagonal structure [[A, 0], [0, lam A*]] for a polynomial base matrix."""
    a = np.asarray(a, dtype=float)
    if lam not in (+1, -1):
        raise ValueError("lam must be +1 or -1")
    sq = a @ a
    ident = np.eye(a.shape[0])
    if not (close(sq, ident, tol) or close(sq, -ident, tol)):
        raise NotPolynomialError("A squares to neither +I nor -I")
    zero = np.zeros_like(a)
    return BlockOperator(a, zero, zero, lam * dual_map(a))


FLAT = "Flat"
SHARP = "Sharp"


def build_triangular(data: AeManifoldData, variant: str, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Triangular structure with the musical map in the off-diagonal corner.

    For alpha = -1 the dual block is eps J*, for alpha = +1 it is -eps F*;
    either way the result squares to alpha Id.
    """
    if variant not in (FLAT, SHARP):
        raise ValueError("variant must be Flat or Sharp")
    flat, sharp = musicals(data.g, tol)
    zero = np.zeros((data.n, data.n))
    dual = data.epsilon * dual_map(data.J)
    if data.alpha == +1:
        dual = -dual
    if variant == FLAT:
        return BlockOperator(data.J, zero, flat, dual)
    return BlockOperator(data.J, sharp, zero, dual)


def build_mixed(data: AeManifoldData, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Mixed structure with sqrt(2)-scaled musical maps; squares to -alpha Id.

    alpha = -1 gives the paracomplex [[J, s2 sharp], [s2 flat, eps J*]];
    alpha = +1 gives the complex [[F, -s2 sharp], [s2 flat, -eps F*]].
    """
    flat, sharp = musicals(data.g, tol)
    s2 = sqrt(2.0)
    if data.alpha == -1:
        return BlockOperator(data.J, s2 * sharp, s2 * flat, data.epsilon * dual_map(data.J))
    return BlockOperator(data.J, -s2 * sharp, s2 * flat, -data.epsilon * dual_map(data.J))


# ---------------------------------------------------------------------------
# Closed-form fundamental tensors, assembled independently from base data.

FAMILY_IDS = (
    "Jg",
    "Fg",
    "Jom",
    "Fom",
    "JlamJ+",
    "JlamJ-",
    "FlamF+",
    "FlamF-",
    "JJgFlat",
    "JJgSharp",
    "FFgFlat",
    "FFgSharp",
    "FJg",
    "JFg",
)


def build_family(family: str, data, tol: Tolerance = DEFAULT_TOL) -> BlockOperator:
    """Build a named operator family from base data.

    data is a BaseForm for the musical families Jg/Fg/Jom/Fom and an
    AeManifoldData for the J-dependent families.
    """
    if family in ("Jg", "Fg", "Jom", "Fom"):
        b = data.g if isinstance(data, AeManifoldData) else data
        return build_musical(b, -1 if family[0] == "J" else +1, tol)
    if not isinstance(data, AeManifoldData):
        raise UnknownFamilyError(f"family {family!r} needs (J, g) base data")
    if family in ("JlamJ+", "JlamJ-", "FlamF+", "FlamF-"):
        lam = +1 if family.endswith("+") else -1
        want_alpha = -1 if family[0] == "J" else +1
        if data.alpha != want_alpha:
            raise UnknownFamilyError(f"family {family!r} needs alpha = {want_alpha}")
        return build_diagonal(data.J, lam, tol)
    if family in ("JJgFlat", "JJgSharp", "FFgFlat", "FFgSharp"):
        want_alpha = -1 if family[0] == "J" else +1
        if data.alpha != want_alpha:
            raise UnknownFamilyError(f"family {family!r} needs alpha = {want_alpha}")
        return build_triangular(data, FLAT if family.endswith("Flat") else SHARP, tol)
    if family in ("FJg", "JFg"):
        want_alpha = -1 if family == "FJg" else +1
        if data.alpha != want_alpha:
            raise UnknownFamilyError(f"family {family!r} needs alpha = {want_alpha}")
        return build_mixed(data, tol)
    raise UnknownFamilyError(f"unknown family {family!r}")


def _g0_conjugated(j: np.ndarray) -> np.ndarray:
    """Gram of (u, v) -> G0(J X + xi, J Y + eta)."""
    n = j.shape[0]
    zero = np.zeros((n, n))
    return np.block([[zero, 0.5 * j.T], [0.5 * j, zero]])


def _omega0_conjugated(j: np.ndarray) -> np.ndarray:
    """Gram of (u, v) -> Omega0(J X + xi, J Y + eta)."""
    n = j.shape[0]
    zero = np.zeros((n, n))
    return np.block([[zero, -0.5 * j.T], [0.5 * j, zero]])


def _diag(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    zero = np.zeros_like(a)
    return np.block([[a, zero], [zero, d]])


def _closed_form_gram(family: str, with_metric: str, data, tol: Tolerance) -> np.ndarray:
    """Independent closed form of the fundamental tensor, from base blocks."""
    n = data.n
    if isinstance(data, AeManifoldData):
        g = data.g
        j = data.J
    else:
        g = data
        j = None
    gm = g.gram
    if with_metric == "G0":
        if family in ("Jg", "Fg"):
            _, sharp = musicals(g, tol)
            s = -1.0 if family == "Jg" else +1.0
            # (g(X, Y) +/- g(sharp xi, sharp eta)) / 2
            return _diag(0.5 * gm, 0.5 * s * sharp.T @ gm @ sharp)
        if family in ("Jom", "Fom"):
            _, sharp = musicals(g, tol)
            s = +1.0 if family == "Jom" else -1.0
            return _diag(0.5 * gm, 0.5 * s * sharp.T @ gm @ sharp)
        if family in ("JlamJ+", "JlamJ-", "FlamF+", "FlamF-"):
            lam = +1.0 if family.endswith("+") else -1.0
            # G0(J X + xi, lam J Y + eta)
            zero = np.zeros((n, n))
            return np.block([[zero, 0.5 * j.T], [0.5 * lam * j, zero]])
        if family in ("JJgFlat", "FFgFlat"):
            return _g0_conjugated(j) + _diag(0.5 * gm, np.zeros((n, n)))
        if family in ("JJgSharp", "FFgSharp"):
            _, sharp = musicals(g, tol)
            return _g0_conjugated(j) + _diag(np.zeros((n, n)), 0.5 * sharp.T @ gm @ sharp)
        if family == "FJg":
            _, sharp = musicals(g, tol)
            half = sqrt(2.0) / 2.0
            return _g0_conjugated(j) + _diag(half * gm, half * sharp.T @ gm @ sharp)
        if family == "JFg":
            _, sharp = musicals(g, tol)
            half = sqrt(2.0) / 2.0
            return _g0_conjugated(j) + _diag(half * gm, -half * sharp.T @ gm @ sharp)
    elif with_metric == "Gg":
        if family == "Jg":
            return -2.0 * omega0(n).gram
        if family == "Fg":
            return 2.0 * g0(n).gram
        if family in ("Jphi", "Fphi"):
            # -eps xi(J Y) + eta(J X) and eps xi(J Y) + eta(J X)
            eps = float(data.epsilon)
            s = -eps if family == "Jphi" else eps
            zero = np.zeros((n, n))
            return np.block([[zero, j.T], [s * j, zero]])
        if family in ("JlamJ+", "JlamJ-", "FlamF+", "FlamF-"):
            lam = +1.0 if family.endswith("+") else -1.0
            phi = base_fundamental(data)
            _, sharp_phi = musicals(phi, tol)
            s = -lam if family[0] == "J" else lam
            return _diag(phi.gram, s * sharp_phi.T @ phi.gram @ sharp_phi)
        if family == "FJg":
            phi = base_fundamental(data)
            _, sharp_phi = musicals(phi, tol)
            return 2.0 * sqrt(2.0) * g0(n).gram + _diag(
                phi.gram, sharp_phi.T @ phi.gram @ sharp_phi
            )
        if family == "JFg":
            phi = base_fundamental(data)
            _, sharp_phi = musicals(phi, tol)
            return -2.0 * sqrt(2.0) * omega0(n).gram + _diag(
                phi.gram, sharp_phi.T @ phi.gram @ sharp_phi
            )
    raise UnknownFamilyError(f"no closed form registered for {family!r} with {with_metric!r}")


TWIN_FORMULA_FAMILIES = (
    "Jg@G0", "Fg@G0", "Jom@G0", "Fom@G0",
    "JlamJ+@G0", "JlamJ-@G0", "FlamF+@G0", "FlamF-@G0",
    "JJgFlat@G0", "JJgSharp@G0", "FFgFlat@G0", "FFgSharp@G0",
    "FJg@G0", "JFg@G0",
    "Jg@Gg", "Fg@Gg", "Jphi@Gg", "Fphi@Gg",
    "JlamJ+@Gg", "JlamJ-@Gg", "FlamF+@Gg", "FlamF-@Gg",
    "FJg@Gg", "JFg@Gg",
)


def twin_formula_check(family: str, data, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Compare fundamental_tensor output against the closed-form expression.

    family is "<op>@<metric>" with metric G0 or Gg, e.g. "Fg@Gg"; Jphi/Fphi
    denote the musical structures built from the base fundamental tensor.
    """
    if family not in TWIN_FORMULA_FAMILIES:
        raise UnknownFamilyError(f"unknown twin-formula family {family!r}")
    op_id, metric_id = family.split("@")
    if metric_id == "G0":
        metric = g0(data.n)
    else:
        metric = induced_metric(data.g if isinstance(data, AeManifoldData) else data, tol)
    if op_id in ("Jphi", "Fphi"):
        phi = base_fundamental(data)
        op = build_musical(phi, -1 if op_id == "Jphi" else +1, tol)
    else:
        op = build_family(op_id, data, tol)
    tensor = fundamental_tensor(op, metric, tol)
    expected = _closed_form_gram(op_id, metric_id, data, tol)
    return close(tensor.form.gram, expected, tol)


# ---------------------------------------------------------------------------
# Recovering a base complex structure from a G0-isometric complex operator.


def extract_base_complex(op: BlockOperator, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Base matrix J with J^2 = -I from a G0-isometric complex operator.

    Greedily builds a G0-positive-definite op-stable subspace of dimension n
    (pick a positive vector, adjoin its image, pass to the G0-orthogonal
    complement), then conjugates op through the anchor projection
    pi(X + xi) = X.  Restarts with a different seed direction, at most n
    times, when that projection is singular.
    """
    cls = classify_pair(op, g0(op.n), tol)
    if cls.alpha != -1 or cls.epsilon != +1:
        raise IncompatiblePairError("operator is not G0-isometric almost complex")
    n = op.n
    m = op.assemble()
    gram0 = g0(n).gram
    last_error = None
    for attempt in range(n):
        basis = _greedy_positive_subspace(m, gram0, n, attempt, tol)
        top = basis[:n, :]
        if is_degenerate(top, tol):
            last_error = ProjectionSingularError("anchor projection singular")
            continue
        # op restricted to the subspace, in the chosen basis
        coeff = np.linalg.lstsq(basis, m @ basis, rcond=None)[0]
        return top @ coeff @ np.linalg.inv(top)
    raise last_error or ProjectionSingularError("no positive subspace found")


def _greedy_positive_subspace(m, gram0, target_dim, attempt, tol: Tolerance) -> np.ndarray:
    """Columns spanning a G0-positive, m-stable subspace of the given dimension."""
    two_n = m.shape[0]
    chosen = np.zeros((two_n, 0))
    while chosen.shape[1] < target_dim:
        if chosen.shape[1] == 0:
            comp = np.eye(two_n)
        else:
            # complement = kernel of u -> G0(chosen_i, u)
            _, sv, vt = np.linalg.svd(chosen.T @ gram0)
            rank = int(np.sum(sv > tol.abs * max(sv[0], 1.0)))
            comp = vt[rank:].T
        restricted = comp.T @ gram0 @ comp
        eigvals, eigvecs = np.linalg.eigh(0.5 * (restricted + restricted.T))
        positive = np.flatnonzero(eigvals > tol.abs)
        if positive.size == 0:
            raise ProjectionSingularError("no positive direction left in the complement")
        # rotate the preferred positive direction with the restart index
        pick = positive[::-1][attempt % positive.size] if chosen.shape[1] == 0 else positive[-1]
        v = comp @ eigvecs[:, pick]
        v = v / np.sqrt(v @ gram0 @ v)
        w = m @ v
        chosen = np.column_stack([chosen, v, w])
    return chosen[:, :target_dim]
