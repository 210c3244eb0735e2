from __future__ import annotations

import logging
from typing import Any, Protocol

from ..cherednik import (
    hom_dim,
    hom_dim_oracle,
    prop19_element,
    q_dimension,
    shift_image,
    simple_dimension,
    theta_injectivity,
)
from ..params import (
    DeformParam,
    StabParam,
    b_vector,
    classify_lambda,
    d_vector,
    euler_constants,
    euler_shift_identity,
    format_rational,
    in_alcove_set,
    lambda_to_kappa,
    pairs,
    rep_order,
    theta_order,
)
from ..quivergeom import (
    PicardLattice,
    SlotState,
    abl_character,
    ch_standard_eta,
    char_cycle,
    char_cycle_combinatorial,
    chart,
    cotangent_weights,
    curve_pattern,
    f_monomial,
    fixed_point,
    fixed_point_eta,
    g_basis,
    g_generated,
    geom_order,
    gr_main_check,
    lemma2_exponents,
    o1_fiber_degree,
    o_prime_generator,
    polytope_sections,
    rch_simple,
    taut_fiber_qt,
)
from ..schemas import ClaimRecord, RunReport, VerificationResult
from ..series import TruncatedSeries
from ..weyl import Bidegree, gl_weight, semi_invariant_basis, within

logger = logging.getLogger(__name__)


class RecordSink(Protocol):
    def record(self, report: RunReport) -> None: ...


class CollectingSink:
    def __init__(self) -> None:
        self.reports: list[RunReport] = []

    def record(self, report: RunReport) -> None:
        self.reports.append(report)


def _theta_params(theta: StabParam) -> dict[str, Any]:
    return {"l": theta.rank, "theta": list(theta.values)}


def _lambda_params(lam: DeformParam) -> dict[str, Any]:
    return {"l": lam.rank, "lambda": lam.to_strings()}


class VerificationRunner:
    """Сборка отчётов по каждой подкоманде; готовый отчёт уходит в sink."""

    def __init__(self, sink: RecordSink) -> None:
        self._sink = sink

    def _finish(self, report: RunReport) -> RunReport:
        self._sink.record(report)
        logger.info(
            "Report assembled",
            extra={"command": report.command, "claims": len(report.claims), "ok": report.ok},
        )
        return report

    def order(self, theta: StabParam, lam: DeformParam | None = None) -> RunReport:
        order = theta_order(theta)
        geometric = geom_order(theta)
        size = theta.rank
        d = d_vector(theta)
        b = b_vector(theta.values, order)
        report = RunReport(command="order", params=_theta_params(theta))
        report.claims = [
            ClaimRecord.check(
                "curve incidences reproduce the stability order",
                geometric.order.eta == order.eta,
                {"geometric": list(geometric.order.eta), "combinatorial": list(order.eta)},
            ),
            ClaimRecord.check("d sums to zero", sum(d) == 0, {"d": list(d)}),
            ClaimRecord.from_checks(
                "d_{i+1} − d_i = −lθ_i",
                (
                    (d[(i + 1) % size] - d[i] == -size * theta.values[i], {"i": i})
                    for i in range(size)
                ),
            ),
            ClaimRecord.from_checks(
                "d along η drops by l·b",
                (
                    (d[order[k]] - d[order[k + 1]] == size * b[k - 1], {"k": k})
                    for k in range(1, size)
                ),
            ),
        ]
        report.data = {
            "eta": list(order.eta),
            "order": order.describe(),
            "d": list(d),
            "b": list(b),
            "incidences": [list(pair) for pair in geometric.incidences],
        }
        if lam is not None:
            report.params.update(_lambda_params(lam))
            lam_class = classify_lambda(lam)
            relation = rep_order(lam)
            report.claims.append(
                ClaimRecord.check(
                    "Euler constants shift by −d",
                    euler_shift_identity(lam, theta),
                    {"lambda": lam.to_strings()},
                ),
            )
            report.data.update(
                {
                    "rreg": lam_class.in_rreg,
                    "tilde_rreg": lam_class.in_tilde_rreg,
                    "in_alcove_set": in_alcove_set(lam, theta),
                    "rep_order": [[i, j] for i, j in pairs(size) if relation[i][j]],
                    "euler": [format_rational(value) for value in euler_constants(lam)],
                    "kappa": [format_rational(value) for value in lambda_to_kappa(lam)],
                },
            )
        return self._finish(report)

    def homs(self, lam: DeformParam, depth: int) -> RunReport:
        size = lam.rank
        checks = []
        table: dict[str, Any] = {}
        for i, j in pairs(size):
            record = hom_dim(lam, i, j)
            search = max(depth, 4 * size * ((record.n or 0) + 1))
            oracle = hom_dim_oracle(lam, i, j, search)
            checks.append((record == oracle, {"pair": [i, j], "depth": search}))
            if record.dim:
                table[f"({i},{j})"] = {**record.to_payload(), "simple": simple_dimension(lam, i, j)}
        report = RunReport(command="homs", params={**_lambda_params(lam), "depth": depth})
        report.claims = [ClaimRecord.from_checks("hom dimensions agree with the oracle", checks)]
        report.data = table
        return self._finish(report)

    def fixed_points(self, theta: StabParam) -> RunReport:
        size = theta.rank
        order = theta_order(theta)
        eta_checks = []
        curve_checks = []
        fiber_checks = []
        patterns: dict[str, Any] = {}
        for position in range(1, size + 1):
            vertex = order[position]
            pattern = fixed_point(theta, vertex)
            eta_checks.append((fixed_point_eta(theta, position) == pattern, {"position": position}))
            curve = curve_pattern(theta, vertex)
            earlier = {order[j] for j in range(1, position)}
            curve_checks.append(
                (
                    all(
                        (state is SlotState.B_ONLY) == (slot in earlier)
                        for slot, state in enumerate(curve.slots)
                    ),
                    {"position": position},
                ),
            )
            fiber = taut_fiber_qt(theta, vertex).specialize_t_inverse()
            base = (-vertex) % size
            expected = TruncatedSeries.in_q({base - k: 1 for k in range(size)})
            fiber_checks.append((fiber.coeffs == expected.coeffs, {"vertex": vertex}))
            patterns[str(vertex)] = {
                "position": position,
                "fixed_point": pattern.to_payload()["slots"],
                "curve": curve.to_payload()["slots"],
                "o1_degree": o1_fiber_degree(theta, position),
                "taut_fiber": taut_fiber_qt(theta, vertex).to_payload(),
                "cotangent": [list(pair) for pair in cotangent_weights(size, position)],
            }
        report = RunReport(command="fixed-points", params=_theta_params(theta))
        report.claims = [
            ClaimRecord.from_checks("η-form of fixed points agrees", eta_checks),
            ClaimRecord.from_checks("η-form of curves agrees", curve_checks),
            ClaimRecord.from_checks("tautological fibers specialize correctly", fiber_checks),
        ]
        report.data = {"eta": list(order.eta), "points": patterns}
        return self._finish(report)

    def charts(self, theta: StabParam) -> RunReport:
        size = theta.rank
        records = [chart(theta, j) for j in range(1, size + 1)]
        cover = []
        for vertex in range(size):
            pattern = fixed_point(theta, vertex)
            owners = [record.index for record in records if record.contains(pattern)]
            expected = [record.index for record in records if record.vertex == vertex]
            cover.append((owners == expected and len(owners) == 1, {"vertex": vertex}))
        report = RunReport(command="charts", params=_theta_params(theta))
        report.claims = [
            ClaimRecord.from_checks(
                "chart generators map to the toric pair",
                ((record.images == record.expected, {"chart": record.index}) for record in records),
            ),
            ClaimRecord.from_checks(
                "chart generators multiply to xy",
                ((record.product_is_xy, {"chart": record.index}) for record in records),
            ),
            ClaimRecord.from_checks("each fixed point lies in exactly one chart", cover),
        ]
        report.data = {"charts": [record.to_payload() for record in records]}
        return self._finish(report)

    def sections(self, theta: StabParam, m: int, cap: Bidegree) -> RunReport:
        """Сечения для θ' = mθ при порядке η самого θ."""
        size = theta.rank
        order = theta_order(theta)
        theta_prime = theta.scaled(m).values
        b = b_vector(theta_prime, order)
        basis = semi_invariant_basis(theta_prime, cap)
        members = set(basis.members)
        generated = g_generated(theta_prime, order, cap)
        entries = g_basis(theta_prime, order, cap)
        polytope = polytope_sections(b, cap)
        lattice = PicardLattice(size)
        f_checks = []
        for j in range(1, size + 1):
            f = f_monomial(theta_prime, order, j)
            listed = f in members or not within(f.bidegree, cap)
            f_checks.append(
                (
                    gl_weight(f) == tuple(theta_prime)
                    and listed
                    and (sum(f.a), sum(f.c)) == o_prime_generator(b, size + 1 - j),
                    {"j": j},
                ),
            )
        primes = [lattice.prime(k) for k in range(size + 1)]
        total = primes[0]
        weighted = primes[0].scale(0)
        for k, prime in enumerate(primes[1:], start=1):
            total = total + prime
            weighted = weighted + prime.scale(k)
        zero = tuple([0] * (size - 1))
        report = RunReport(
            command="sections",
            params={**_theta_params(theta), "m": m, "cap": list(cap)},
        )
        report.claims = [
            ClaimRecord.check(
                "g-basis generates the semi-invariants",
                generated == members,
                {"missing": len(members - generated), "extra": len(generated - members)},
            ),
            ClaimRecord.from_checks(
                "g-basis bidegrees follow the toric generators",
                (
                    (entry.lemma_exponents == lemma2_exponents(b, entry.k, entry.n), {"k": entry.k})
                    for entry in entries
                ),
            ),
            ClaimRecord.check(
                "polytope sections match semi-invariant bidegrees",
                set(polytope.twisted) == set(basis.counts()),
                {"b": list(b)},
            ),
            ClaimRecord.from_checks("f-monomials have weight θ' and toric form", f_checks),
            ClaimRecord.check(
                "Picard relations hold",
                total.coords == zero and weighted.coords == zero,
                {"sum": list(total.coords), "weighted": list(weighted.coords)},
            ),
            ClaimRecord.check(
                "D(b) decomposes to b",
                lattice.from_b(b).coords == b,
                {"b": list(b)},
            ),
        ]
        report.data = {
            "b": list(b),
            "g_basis": [
                {"k": entry.k, "n": entry.n, **entry.monomial.to_payload()} for entry in entries
            ],
            "polytope": [list(point) for point in polytope.points],
            "counts": {f"{x},{y}": n for (x, y), n in sorted(basis.counts().items())},
        }
        return self._finish(report)

    def abl_verify(self, theta: StabParam, m: int, window: int) -> RunReport:
        result = abl_character(theta, m, window)
        report = RunReport(
            command="abl-verify",
            params={**_theta_params(theta), "m": m, "window": window},
            claims=result.claims,
            data=result.data,
        )
        return self._finish(report)

    def shift_verify(
        self,
        lam: DeformParam,
        theta: StabParam,
        top: int,
        window: int,
    ) -> RunReport:
        report = RunReport(
            command="shift-verify",
            params={**_lambda_params(lam), "theta": list(theta.values), "window": window},
        )
        for position in range(1, lam.rank + 1):
            report.extend(
                f"shift image at position {position}",
                shift_image(lam, theta, position, top),
            )
            report.extend(
                f"lowest weight element at position {position}",
                prop19_element(lam, theta, position, top),
            )
        if classify_lambda(lam).in_tilde_rreg:
            report.extend("q-dimension", q_dimension(lam, theta, window))
            report.extend("theta injectivity", theta_injectivity(lam, theta))
        else:
            logger.info("q-dimension skipped", extra={"lambda": lam.to_strings()})
            report.data["q-dimension"] = None
        return self._finish(report)

    def gr_verify(self, lam: DeformParam, theta: StabParam, m: int, cap: Bidegree) -> RunReport:
        result = gr_main_check(lam, theta, m, cap)
        report = RunReport(
            command="gr-verify",
            params={**_lambda_params(lam), "theta": list(theta.values), "m": m, "cap": list(cap)},
            claims=result.claims,
            data=result.data,
        )
        return self._finish(report)

    def ch_cycles(self, theta: StabParam, lam: DeformParam | None = None) -> RunReport:
        size = theta.rank
        order = theta_order(theta)
        cycles = {vertex: char_cycle(theta, vertex) for vertex in range(size)}
        standard = {position: ch_standard_eta(theta, position) for position in range(1, size + 1)}
        report = RunReport(command="ch-cycles", params=_theta_params(theta))
        report.claims = [
            ClaimRecord.from_checks(
                "geometric cycles match the order",
                (
                    (cycles[vertex] == char_cycle_combinatorial(theta, vertex), {"vertex": vertex})
                    for vertex in range(size)
                ),
            ),
            ClaimRecord.from_checks(
                "cycles along η are initial segments",
                (
                    (cycles[order[position]] == standard[position], {"position": position})
                    for position in range(1, size + 1)
                ),
            ),
            ClaimRecord.check(
                "total multiplicity is l(l+1)/2",
                sum(len(curves) for curves in cycles.values()) == size * (size + 1) // 2,
                {"total": sum(len(curves) for curves in cycles.values())},
            ),
        ]
        report.data = {
            "eta": list(order.eta),
            "cycles": {str(vertex): curves for vertex, curves in cycles.items()},
        }
        if lam is not None:
            report.params.update(_lambda_params(lam))
            simple = {}
            checks = []
            for position in range(1, size + 1):
                record = rch_simple(lam, theta, position)
                simple[str(order[position])] = list(record.curves)
                if record.partner is None:
                    continue
                partner_position = order.position(record.partner)
                interval = sorted(order[j] for j in range(partner_position + 1, position + 1))
                checks.append((list(record.curves) == interval, {"position": position}))
            report.claims.append(
                ClaimRecord.from_checks("reduced cycles of simples are intervals", checks),
            )
            report.data["simple"] = simple
        return self._finish(report)


def merge_reports(
    command: str,
    params: dict[str, Any],
    parts: list[tuple[str, RunReport]],
) -> RunReport:
    merged = RunReport(command=command, params=params)
    for label, part in parts:
        merged.extend(label, VerificationResult(claims=part.claims, data=part.data))
    return merged
