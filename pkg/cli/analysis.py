"""Compose the module pipelines into reports."""

from __future__ import annotations

from ckf.conditions import lcw_conditions
from ckf.families import FAMILY_NAMES, lcw_potential
from ckf.fields import conformal_killing_selftest
from cli.report import Report
from distributions.distribution import from_direction, is_integrable, is_umbilical, second_fundamental_form
from flags.cotton_york import det_cy, eigenflag_find_3d
from flags.weyl import weyl_type
from liealg.algebra import jacobi_defects
from liealg.curvature import BIVECTOR_BASIS, curvature_pack
from ratmath.rational import format_rational
from utils.config import DESCENT_STARTS, WORKERS
from utils.errors import NotLcwError, ValidationError
from utils.logging import logger

NO_LCW = "no LCW along eigenflags"


def combo(v):
    """Render a vector as a combination of frame vectors, e.g. "-6e0 + 4e1"."""
    terms = []
    for i, a in enumerate(v):
        if a == 0:
            continue
        coeff = "" if a == 1 else ("-" if a == -1 else format_rational(a))
        terms.append(f"{coeff}e{i}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _label(idx):
    return "".join(str(i) for i in idx)


def _canonical_pairs(table):
    """Entries R_ijkl with i < j, k < l and (i, j) <= (k, l)."""
    for (i, j, k, m), value in table.nonzero_items():
        if i < j and k < m and (i, j) <= (k, m):
            yield (i, j, k, m), value


def report_input(report, L):
    report.exact("input", "dim", L.dim)
    for (i, j), terms in L.nonzero_brackets().items():
        report.text("input", f"[e{i}, e{j}]", combo([terms.get(k, 0) for k in range(L.dim)]))
    defects = jacobi_defects(L)
    report.flag("input", "jacobi", not defects)
    for triple, defect in defects:
        report.exact("input", f"jacobi_defect_{_label(triple)}", defect)


def report_curvature(report, L, pack):
    for idx, value in pack.connection.nonzero_items():
        report.exact("connection", f"n_{_label(idx)}", value)
    for idx, value in _canonical_pairs(pack.riemann):
        report.exact("curvature", f"R_{_label(idx)}", value)
    report.exact("ricci", "Ric", pack.ricci)
    report.exact("scalar", "s", pack.scalar)
    report.exact("schouten", "S", pack.schouten)
    if L.dim == 3:
        for (i, j, k), value in pack.cotton.nonzero_items():
            if i < j:
                report.exact("cotton", f"C_{i}{j}{k}", value)
        report.exact("cotton_york", "CY", pack.cotton_york)
        report.exact("cotton_york", "det", det_cy(pack.cotton_york))
    else:
        report_weyl(report, pack.weyl, pack.w6)


def report_weyl(report, W, w6):
    for idx, value in _canonical_pairs(W):
        report.exact("weyl", f"W_{_label(idx)}", value)
    report.text("w6", "basis", ", ".join(f"e{a}^e{b}" for a, b in BIVECTOR_BASIS))
    report.exact("w6", "W6", w6)


def report_certificates(report, certificates):
    for index, cert in enumerate(certificates):
        if cert.exact:
            report.exact("flags", f"flag_{index}", cert.direction)
        else:
            report.numeric("flags", f"flag_{index}", cert.direction, cert.defect)


def report_weyl_type(report, wt):
    report.text("flags", "type", wt.tag)
    report.exact("flags", "multiplicities", wt.multiplicities)
    for index, (value, mult) in enumerate(wt.eigenvalues):
        if isinstance(value, float):
            report.numeric("flags", f"eigenvalue_{index}", value)
        else:
            report.exact("flags", f"eigenvalue_{index}", value)
        report.exact("flags", f"eigenvalue_{index}_multiplicity", mult)
    report_certificates(report, wt.certificates)
    for index, plane in enumerate(wt.planes):
        report.exact("flags", f"plane_{index}", plane.basis)
        checks = f"{plane.in_plane_checked} in-plane pass, {plane.mixed_checked} mixed fail"
        report.text("flags", f"plane_{index}_checks", checks)
    if wt.stats is not None:
        report.exact("flags", "descent_starts", wt.stats.starts)
        report.exact("flags", "descent_below_floor", wt.stats.below_floor)
        report.numeric("flags", "descent_min_defect", wt.stats.min_defect)
        report.numeric("flags", "descent_max_defect", wt.stats.max_defect)
    report.text("flags", "note", wt.note)


def report_distribution(report, L, D, label):
    """Second fundamental form, integrability and umbilicity of one distribution; True when both tests pass."""
    report.text("distributions", label, D.describe())
    for z, M in zip(D.normal, second_fundamental_form(L, D)):
        report.exact("distributions", f"{label}.II[{combo(z)}]", M)
    integrable = is_integrable(L, D)
    report.flag("distributions", f"{label}.integrable", integrable.integrable)
    if integrable.witness is not None:
        w = integrable.witness
        report.text(
            "distributions",
            f"{label}.witness",
            f"[{combo(D.tangent[w.a])}, {combo(D.tangent[w.b])}] = {combo(w.bracket)}",
        )
        report.exact("distributions", f"{label}.witness_bracket", w.bracket)
    umbilic = is_umbilical(L, D)
    report.flag("distributions", f"{label}.umbilical", umbilic.umbilical)
    if umbilic.umbilical:
        report.exact("distributions", f"{label}.H", umbilic.H)
    else:
        v = umbilic.violation
        report.text(
            "distributions",
            f"{label}.violation",
            f"II[{combo(D.normal[v.normal_index])}]({v.a}, {v.b}) = {format_rational(v.value)}, "
            f"expected {format_rational(v.expected)}",
        )
    return integrable.integrable and umbilic.umbilical


def _distribution_verdict(report, L, certificates):
    survivors = 0
    for index, cert in enumerate(c for c in certificates if c.exact):
        D = from_direction(cert.direction, name=f"D{index}")
        if report_distribution(report, L, D, f"D{index}"):
            survivors += 1
    return survivors


def analyze_algebra(L, title="lie_algebra", starts=DESCENT_STARTS, workers=WORKERS):
    """Full curvature pipeline, eigenflags and distribution tests for one metric Lie algebra."""
    report = Report(title)
    report_input(report, L)
    pack = curvature_pack(L)
    report_curvature(report, L, pack)
    try:
        verdict = _algebra_verdict(report, L, pack, starts, workers)
    except ValidationError as e:
        # curvature of an algebra kept with skip_jacobi loses its symmetries
        if not jacobi_defects(L):
            raise
        logger.warning(f"Flag search skipped for {title}: {e}")
        report.text("flags", "note", str(e))
        verdict = "inconclusive: curvature lacks its algebraic symmetries (Jacobi fails)"
    report.text("classification", "verdict", verdict)
    logger.info(f"Analysis of {title}: {verdict}")
    return report


def _algebra_verdict(report, L, pack, starts, workers):
    if L.dim == 3:
        flags = eigenflag_find_3d(pack.cotton_york)
        report.flag("flags", "all_directions", flags.all_directions)
        report_certificates(report, flags.certificates)
        if flags.all_directions:
            verdict = "conformally flat: every direction is an eigenflag"
        elif not flags.certificates:
            verdict = "no LCW: det CY != 0, no eigenflag directions"
        else:
            survivors = _distribution_verdict(report, L, flags.certificates)
            verdict = _flag_verdict(flags.certificates, survivors)
    else:
        wt = weyl_type(pack.weyl, starts=starts, workers=workers)
        report_weyl_type(report, wt)
        if wt.tag == "D":
            verdict = "conformally flat: every direction is an eigenflag"
        elif wt.tag == "A":
            verdict = "no LCW: no eigenflag directions (numeric verdict)"
        elif wt.tag == "inconclusive":
            verdict = "inconclusive"
        else:
            survivors = _distribution_verdict(report, L, wt.certificates)
            verdict = _flag_verdict(wt.certificates, survivors)
            if wt.tag == "C":
                verdict += " (frame directions of the eigenflag planes only)"
    return verdict


def _flag_verdict(certificates, survivors):
    if any(not c.exact for c in certificates):
        return "inconclusive: numeric eigenflag candidates are not tested"
    if survivors == 0:
        return NO_LCW
    return f"{survivors} eigenflag direction(s) pass the distribution tests"


def analyze_ckf(X, title="ckf"):
    """Conditions, family, orbit and reduction chain of a conformal Killing field."""
    report = Report(title)
    report.text("input", "field", X.describe())
    selftest = conformal_killing_selftest(X)
    report.flag("input", "conformal_killing", selftest.passes)
    report.exact("input", "lambda_linear", selftest.linear)
    report.exact("input", "lambda_constant", selftest.constant)

    conditions = lcw_conditions(X)
    report.flag("conditions", "B_wedge_gamma_zero", conditions.b_wedge_gamma.is_zero())
    report.flag("conditions", "cB_minus_alpha_wedge_gamma_zero", conditions.cB_minus_alpha_wedge_gamma.is_zero())
    report.flag("conditions", "passed", conditions.passed)
    if not conditions.passed:
        report.text("classification", "verdict", "not an LCW field")
        return report
    try:
        potential = lcw_potential(X)
    except NotLcwError as e:
        report.text("classification", "verdict", f"not an LCW field ({e})")
        return report

    family = potential.family
    report.exact("family", "family", family.family)
    report.text("family", "name", FAMILY_NAMES[family.family])
    report.text("family", "weight", family.describe())
    report.exact("family", "shift", potential.shift)
    report.exact("orbit", "orbit", family.orbit)
    report.exact("chain", "length", len(potential.chain))
    for index, move in enumerate(potential.chain):
        report.text("chain", f"move_{index}", move.describe())
    report.text("classification", "verdict", f"LCW of family {family.family}, orbit {family.orbit}")
    return report


def analyze(doc, starts=DESCENT_STARTS, workers=WORKERS):
    title = doc.source or doc.kind
    if doc.kind == "lie_algebra":
        return analyze_algebra(doc.payload, title, starts=starts, workers=workers)
    return analyze_ckf(doc.payload, title)
