"""
One report builder per CLI subcommand: load the input document, run the analyses the
configuration asks for, and assemble a report-v1 document with its primary evidence table.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import asdict
from pathlib import Path
from typing import Any

from zerogrowth import __version__
from zerogrowth.common.config import RunConfig
from zerogrowth.common.errors import DegenerateInputError, InputError, ParameterError
from zerogrowth.efun import (
    CoefficientWindow,
    counting_order,
    evaluate,
    hadamard_degree,
    order_estimate,
    taylor_coefficients,
    zero_count,
)
from zerogrowth.growth import (
    CircleQuadrature,
    argument_principle_count,
    jensen_rhs,
    log_mean_estimate,
    sup_norm_estimate,
)
from zerogrowth.laplace import (
    exponential_moment,
    kernel_moment,
    moment_identity_residual,
    obstruction_conditions,
    support_params,
    transform_degree,
    transform_eval,
    zeros_in_disk,
)
from zerogrowth.models import AnnuliDoc, CloudDoc, CloudFamilyDoc, EvidenceTable, ReportDoc
from zerogrowth.parser.documents import (
    function_document,
    load_cap_doc,
    load_function_doc,
    load_kernel_doc,
    load_seqspec_doc,
    to_annuli,
    to_cloud,
    to_family,
    to_function,
    to_kernel,
    to_sequence,
)
from zerogrowth.potential import beta_exponent, capacity_estimate, wiener_partial_sums
from zerogrowth.seqlab import (
    TAIL_COLUMNS,
    RegionParams,
    collapse_check,
    dichotomy_classify,
    growth_bound_check,
    hypothesis_conditions,
    powersums_direct,
    powersums_from_logderiv,
    ring_constants,
    tail_sums,
    tau_estimate,
)
from zerogrowth.series import GroupedSeries, convergence_region, partial_sum, pointwise_to_uniform_check
from zerogrowth.storage.reports import plain

log = logging.getLogger(__name__)

TAYLOR_LENGTH = 64
POWERSUM_ORDER = 8

Builder = Callable[[Path, RunConfig], ReportDoc]


def _table(columns: list[str], dtypes: list[str], rows: list[list[Any]]) -> EvidenceTable:
    return EvidenceTable.model_validate({"columns": columns, "dtypes": dtypes, "rows": rows})


def _plain_table(table: EvidenceTable) -> EvidenceTable:
    return table.model_copy(update={"rows": plain(table.rows)})


def _report(command: str, cfg: RunConfig, results: dict[str, Any], evidence: EvidenceTable) -> ReportDoc:
    return ReportDoc(
        command=command,
        version=__version__,
        config=cfg.model_dump(mode="python", exclude={"out_path", "format"}),
        results=plain(results),
        evidence=_plain_table(evidence),
    )


def build_efun(path: Path, cfg: RunConfig) -> ReportDoc:
    doc = load_function_doc(path)
    f = to_function(doc)
    results: dict[str, Any] = {"identically_zero": f.identically_zero}
    if f.identically_zero:
        return _report("efun", cfg, results, _table(["R", "eta"], ["float", "int"], []))

    results["hadamard_degree"] = hadamard_degree(f)
    results["counting_order"] = counting_order(f, cfg.radii)
    results["evaluations"] = [
        {"z": p.to_complex(), **asdict(evaluate(f, p.to_complex()))} for p in doc.points
    ]
    try:
        window = CoefficientWindow.from_coeffs(
            taylor_coefficients(f, TAYLOR_LENGTH), degree=f.polynomial_degree
        )
        results["order"] = asdict(order_estimate(window, window_fraction=cfg.window_fraction))
    except DegenerateInputError as e:
        results["order"] = {"error": str(e)}
    if f.origin_mult == 0 and f.p == 0:
        results["powersums"] = {
            "from_logderiv": powersums_from_logderiv(f, POWERSUM_ORDER),
            "direct": powersums_direct(f, POWERSUM_ORDER),
        }

    rows = [[R, zero_count(f, R)] for R in cfg.radii]
    return _report("efun", cfg, results, _table(["R", "eta"], ["float", "int"], rows))


def build_growth(path: Path, cfg: RunConfig) -> ReportDoc:
    f = to_function(load_function_doc(path))
    q = CircleQuadrature(cfg.nodes)
    rows: list[list[Any]] = []
    per_radius: list[dict[str, Any]] = []
    for R in cfg.radii:
        mean = log_mean_estimate(f, R, q)
        sup = sup_norm_estimate(f, R)
        winding = argument_principle_count(f, R, q)
        rhs = jensen_rhs(f, R)
        eta = zero_count(f, R)
        per_radius.append(
            {"R": R, "log_mean": asdict(mean), "jensen_rhs": rhs, "sup_norm": asdict(sup), "winding": asdict(winding)}
        )
        rows.append([R, mean.value, rhs, sup.log_value, eta, winding.eta_comparable])
    columns = ["R", "log_mean", "jensen_rhs", "log_sup", "eta", "winding"]
    dtypes = ["float", "float", "float", "float", "int", "int"]
    return _report("growth", cfg, {"radii": per_radius}, _table(columns, dtypes, rows))


def build_seq(path: Path, cfg: RunConfig) -> ReportDoc:
    doc = load_seqspec_doc(path)
    s = to_sequence(doc, window_fraction=cfg.window_fraction)
    q = CircleQuadrature(cfg.nodes)

    stats = ring_constants(s, q)
    results: dict[str, Any] = {"ring_constants": asdict(stats), "caveat": s.window_caveat()}
    results["tau"] = asdict(tau_estimate(s, q)) if any(R > 1.0 for R in s.R_grid) else None
    results["hypotheses"] = asdict(hypothesis_conditions(s, tol_zero=cfg.tol_zero, tol_inf=cfg.tol_inf))
    results["collapse"] = asdict(collapse_check(s, q))

    tails = tail_sums(s, cfg.m_max)
    results["beta_nl"] = tails.beta_nl
    if len(s.R_grid) >= 4 and s.N >= 8:
        verdict = dichotomy_classify(s, cfg.m_max, tol_zero=cfg.tol_zero, tol_inf=cfg.tol_inf)
        results["dichotomy"] = {
            "alternative": verdict.alternative,
            "witness_m": verdict.witness_m,
            "limits": verdict.limits,
            "caveat": verdict.caveat,
            "signed_decay": verdict.signed_decay,
        }
    else:
        results["dichotomy"] = None
        log.warning("dichotomy skipped radii=%s N=%s (needs >= 4 and >= 8)", len(s.R_grid), s.N)

    if doc.region is not None:
        params = RegionParams(beta=doc.region.beta, gamma=doc.region.gamma, tau=doc.region.tau)
        results["growth_bound"] = asdict(growth_bound_check(s, params, stats.C0_est))

    rows = [[n, R, m, value] for (n, R, m), value in sorted(tails.S.items())]
    return _report("seq", cfg, results, _table(list(TAIL_COLUMNS), ["int", "float", "int", "float"], rows))


def _cap_cloud(doc: CloudDoc, cfg: RunConfig) -> ReportDoc:
    cloud = to_cloud(doc)
    n = doc.n if doc.n is not None else max(2, min(cfg.capacity_points, len(cloud) // 4))
    est = capacity_estimate(cloud, min(n, len(cloud)))
    results = {"kind": "cloud", "label": cloud.label, "n_used": est.n_used, "diameter": est.diameter, "cap": est.cap}
    rows = [[k, float(v)] for k, v in enumerate(est.log_diameters, start=2)]
    return _report("cap", cfg, results, _table(["k", "log_diameter"], ["int", "float"], rows))


def _cap_family(doc: CloudFamilyDoc, cfg: RunConfig) -> ReportDoc:
    est = beta_exponent(to_family(doc), n=cfg.capacity_points)
    results = {"kind": "family", "label": doc.label, **asdict(est)}
    rows = [[R, est.caps[R], est.ratios[R]] for R in sorted(est.caps)]
    return _report("cap", cfg, results, _table(["R", "cap", "log_ratio"], ["float", "float", "float"], rows))


def _cap_annuli(doc: AnnuliDoc, cfg: RunConfig) -> ReportDoc:
    pieces = to_annuli(doc)
    depth_max = min(cfg.depth_max, max(pieces))
    report = wiener_partial_sums(pieces, depth_max, n=cfg.capacity_points)
    results = {"kind": "annuli", "label": doc.label, "verdict": report.verdict, "caps": report.caps}
    rows = [[k, term, total] for k, term, total in report.partial_sums]
    return _report("cap", cfg, results, _table(["depth", "term", "cumulative"], ["int", "float", "float"], rows))


def build_cap(path: Path, cfg: RunConfig) -> ReportDoc:
    doc = load_cap_doc(path)
    if isinstance(doc, CloudFamilyDoc):
        return _cap_family(doc, cfg)
    if isinstance(doc, AnnuliDoc):
        return _cap_annuli(doc, cfg)
    return _cap_cloud(doc, cfg)


def build_laplace(path: Path, cfg: RunConfig) -> ReportDoc:
    doc = load_kernel_doc(path)
    kernel = to_kernel(doc)
    n = doc.n if doc.n is not None else kernel.support_end
    if not n > 0:
        raise DegenerateInputError("kernel vanishes identically", operation="laplace")

    params = support_params(kernel, n)
    data = zeros_in_disk(kernel, n, cfg.disk_radius, cfg.tol)
    results: dict[str, Any] = {
        "n": n,
        "support": asdict(params),
        "phi0": transform_eval(kernel, 0.0, n),
        "first_moment": kernel_moment(kernel, 1, n),
        "exponential_moments": exponential_moment(kernel, cfg.s_grid, n),
        "transform_degree": transform_degree(data, doc.q),
        "zerodata": function_document(data.to_function()).model_dump(mode="python"),
        "alpha_n": data.alpha_n,
    }
    if kernel_moment(kernel, 0, n) != 0.0:
        results["moment_identity"] = asdict(
            moment_identity_residual(kernel, cfg.disk_radius, n=n, zero_data=data)
        )

    if doc.obstruction is not None:
        ob = doc.obstruction
        radius = ob.R_search or cfg.disk_radius
        seq = [zeros_in_disk(kernel, t, radius, cfg.tol) for t in ob.truncations]
        mus = [d.mu for d in seq]
        report = obstruction_conditions(seq, mus, ob.q, ob.R_grid, window_fraction=cfg.window_fraction)
        results["obstruction"] = {**asdict(report), "pattern_holds": report.pattern_holds}

    rows = [[z.location.real, z.location.imag, z.multiplicity] for z in data.zeros]
    return _report("laplace", cfg, results, _table(["re", "im", "mult"], ["float", "float", "int"], rows))


def build_series(path: Path, cfg: RunConfig) -> ReportDoc:
    doc = load_seqspec_doc(path)
    if doc.series is None:
        raise InputError("series command needs a 'series' block", field="series")
    s = to_sequence(doc.model_copy(update={"k": None}), window_fraction=cfg.window_fraction)
    try:
        grouped = GroupedSeries(s)
    except ParameterError as e:
        raise InputError(f"series.exponents: {e}", field="series.exponents") from e
    samples = [p.to_complex() for p in doc.series.samples]
    if not samples:
        raise InputError("series.samples must be nonempty", field="series.samples")

    sums = {}
    for z in samples:
        ps = partial_sum(grouped, z)
        sums[f"{z.real!r},{z.imag!r}"] = {
            "value": ps.value,
            "tail_trend": ps.tail_trend,
            "overflow": ps.overflow,
            "diverging": ps.diverging,
        }
    check = pointwise_to_uniform_check(grouped, samples, list(s.R_grid))
    results: dict[str, Any] = {
        "partial_sums": sums,
        "stages": {
            "hypothesis": asdict(check.hypothesis),
            "degree": asdict(check.degree),
            "conclusion": asdict(check.conclusion),
        },
        "all_passed": check.all_passed,
        "samples_sufficient": check.samples_sufficient,
        "sample_note": check.sample_note,
        "q_hypotheses": asdict(check.q_hypotheses),
    }
    if doc.series.C is not None and doc.region is not None:
        region = convergence_region(
            doc.series.C, doc.region.beta, doc.region.gamma, doc.series.z0.to_complex(), doc.series.rho0
        )
        results["region"] = asdict(region)

    rows = [[r["R"], r["n"], r["p_power"], r["q_power"]] for r in check.conclusion.rows]
    columns = ["R", "n", "p_power", "q_power"]
    return _report("series", cfg, results, _table(columns, ["float", "int", "float", "float"], rows))


COMMANDS: dict[str, Builder] = {
    "efun": build_efun,
    "growth": build_growth,
    "seq": build_seq,
    "cap": build_cap,
    "laplace": build_laplace,
    "series": build_series,
}


def run_command(command: str, input_path: Path, cfg: RunConfig) -> ReportDoc:
    try:
        builder = COMMANDS[command]
    except KeyError as e:
        raise ParameterError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}") from e
    log.info("run command=%s input=%s nodes=%s tol=%s", command, input_path, cfg.nodes, cfg.tol)
    return builder(input_path, cfg)
