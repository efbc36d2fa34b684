"""Command-line front end: one self-checking subcommand per puzzle.

Each subcommand runs its verification with the given flags, prints a
text or JSON report, optionally emits an SVG or CSV figure, and exits 0
when every check passes, 1 when a verification fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .report import VerificationReport
from .svgfig import PALETTE, SvgCanvas


def _parse_box(text: str):
    from .tubes import Box

    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("box needs three comma-separated edge lengths")
    return Box(*parts)


# -- subcommand builders ------------------------------------------------------


def run_spotit(args) -> tuple[VerificationReport, dict]:
    from .deck import build_plane, deck_from_plane, deck_to_json, validate_deck

    report = VerificationReport("spotit", inputs={"q": args.q}, seed=args.seed)
    plane = build_plane(args.q)
    deck = deck_from_plane(plane)
    result = validate_deck(deck)
    report.outputs["cards"] = result.n_cards
    report.outputs["symbols_per_card"] = result.card_sizes[0]
    report.outputs["card_pairs"] = result.n_pairs
    report.check("card_count_is_q2_q_1", result.n_cards == args.q**2 + args.q + 1, result.n_cards)
    report.check("symbols_per_card_is_q_1", result.card_sizes[0] == args.q + 1, result.card_sizes[0])
    report.check("uniform_card_size", result.uniform_size, result.uniform_size)
    report.check("every_pair_shares_exactly_one", result.valid, len(result.bad_pairs))
    files = {}
    if args.deck_out:
        files[args.deck_out] = deck_to_json(deck)
    return report, files


def run_clock(args) -> tuple[VerificationReport, dict]:
    from .clock import ambiguous_clock_times

    report = VerificationReport("clock", seed=args.seed)
    result = ambiguous_clock_times()
    report.outputs["ambiguous_per_12h"] = result.count_per_half_day
    report.outputs["ambiguous_per_day"] = result.count_per_day
    report.outputs["hand_coincidences_per_12h"] = len(result.coincidences)
    report.outputs["first_pair_hours"] = result.pairs[0]
    report.check("per_half_day_132", result.count_per_half_day == 132, result.count_per_half_day)
    report.check("per_day_264", result.count_per_day == 264, result.count_per_day)
    report.check("coincidences_11", len(result.coincidences) == 11, len(result.coincidences))
    by_time = dict(result.pairs)
    involutive = all(by_time[partner] == t for t, partner in result.pairs)
    report.check("confusable_pairing_is_involutive", involutive, involutive)
    grid = {Fraction(12 * m, 11) for m in range(11)}
    report.check("coincidences_on_eleventh_grid", set(result.coincidences) == grid, True)
    return report, {}


def run_frame(args) -> tuple[VerificationReport, dict]:
    from .frames import EMPTY, drop_nail, format_word, nail_word

    report = VerificationReport(
        "frame", inputs={"nails": args.nails, "scheme": args.scheme}, seed=args.seed
    )
    schemes = ["left-nested", "balanced"] if args.scheme == "both" else [args.scheme]
    for scheme in schemes:
        word = nail_word(args.nails, scheme)
        if args.nails <= 6:
            report.outputs[f"word_{scheme}"] = format_word(word)
        report.outputs[f"length_{scheme}"] = len(word)
        report.check(f"{scheme}_word_nontrivial", word != EMPTY, len(word))
        drops_kill = all(drop_nail(word, i) == EMPTY for i in range(1, args.nails + 1))
        report.check(f"{scheme}_any_nail_drop_frees_frame", drops_kill, drops_kill)
    if "left-nested" in schemes:
        expect = 3 * 2 ** (args.nails - 1) - 2
        got = len(nail_word(args.nails, "left-nested"))
        report.check("left_nested_length_law", got == expect, got)
    return report, {}


def run_sphere(args) -> tuple[VerificationReport, dict]:
    from .core import DegenerateInputError
    from .sphere import SphericalTriangle, concurrency_check, pole_sum_exact

    report = VerificationReport("sphere", inputs={"triangles": args.triangles}, seed=args.seed)
    exact = pole_sum_exact((1, 0, 0), (0, 1, 0), (1, 1, 1), "altitudes")
    report.check("altitude_pole_sum_exactly_zero", exact == (0, 0, 0), exact)
    exact_m = pole_sum_exact((2, -1, 3), (1, 1, 1), (0, 2, -1), "medians")
    report.check("median_pole_sum_exactly_zero", exact_m == (0, 0, 0), exact_m)

    rng = np.random.default_rng(args.seed)
    worst = 0.0
    worst_point = 0.0
    done = 0
    while done < args.triangles:
        vs = rng.normal(size=(3, 3))
        try:
            tri = SphericalTriangle(A=vs[0], B=vs[1], C=vs[2])
        except DegenerateInputError:
            continue
        res = concurrency_check(tri, "altitudes")
        worst = max(worst, res.residual)
        done += 1
    tol = args.tol if args.tol is not None else 1e-12
    report.outputs["max_pole_determinant"] = worst
    report.check("altitude_poles_collinear", worst < tol, worst)
    return report, {}


def run_tent(args) -> tuple[VerificationReport, dict]:
    from .sphere import SpherePosition, tent_locus, verify_walk

    report = VerificationReport(
        "tent",
        inputs={"radius_km": args.radius, "distance_km": args.distance, "rings": args.rings},
        seed=args.seed,
    )
    locus = tent_locus(args.radius, args.distance, args.rings)
    report.outputs["latitudes_rad"] = list(locus.latitudes)
    report.outputs["latitudes_deg"] = [math.degrees(l) for l in locus.latitudes]
    report.outputs["accumulation_latitude_rad"] = locus.accumulation_latitude
    report.outputs["includes_north_pole"] = locus.includes_north_pole

    pole = verify_walk(SpherePosition(math.pi / 2, 0.0, args.radius), args.distance)
    report.check("north_pole_walk_closes", pole < 1e-9, pole)
    tol = args.tol if args.tol is not None else 1e-6
    worst = max(
        verify_walk(SpherePosition(lat, 1.234, args.radius), args.distance)
        for lat in locus.latitudes
    )
    report.check("ring_walks_close", worst < tol, worst)
    perturbed = verify_walk(
        SpherePosition(locus.latitudes[0] + 1e-3, 0.0, args.radius), args.distance
    )
    report.check("perturbed_ring_breaks_closure", perturbed > 1e-2, perturbed)
    return report, {}


def run_park(args) -> tuple[VerificationReport, dict]:
    from .car import (
        CarState,
        commutator_flow,
        drive_field,
        lie_bracket_numeric,
        park,
        span_residual,
        steer_field,
        turn,
        turn_field,
    )

    report = VerificationReport("park", inputs={"wheelbase": args.wheelbase}, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    wb = args.wheelbase
    states = [
        CarState(
            x=float(rng.uniform(-5, 5)),
            y=float(rng.uniform(-5, 5)),
            theta=float(rng.uniform(-math.pi, math.pi)),
            phi=float(rng.uniform(-0.6, 0.6)),
        )
        for _ in range(100)
    ]
    worst_turn = max(
        float(np.max(np.abs(lie_bracket_numeric(steer_field(), drive_field(wb), s, 1e-4) - turn(s, wb))))
        for s in states
    )
    worst_park = max(
        float(np.max(np.abs(lie_bracket_numeric(drive_field(wb), turn_field(wb), s, 1e-4) - park(s, wb))))
        for s in states
    )
    tol = args.tol if args.tol is not None else 1e-6
    report.check("steer_drive_bracket_matches_turn", worst_turn < tol, worst_turn)
    report.check("drive_turn_bracket_matches_park", worst_park < tol, worst_park)

    s0 = CarState(0, 0, 0, 0)
    t = 0.01
    end = commutator_flow(drive_field(wb), turn_field(wb), t, s0)
    displacement = end.vec() - s0.vec()
    expected = t * t * park(s0, wb)
    rel = float(np.linalg.norm(displacement - expected) / np.linalg.norm(expected))
    report.outputs["flow_displacement"] = displacement
    report.check("flow_commutator_matches_park_within_2pct", rel < 0.02, rel)

    residual = min(span_residual(s, wb) for s in states)
    report.outputs["min_span_residual"] = residual
    report.check("turn_outside_control_span", residual > 1e-6, residual)
    return report, {}


def run_tube(args) -> tuple[VerificationReport, dict]:
    from .tubes import Box, containment_search, mc_tube_volume, steiner_quadratic_fit, tube_volume

    boxes = args.box or [Box(1, 1, 1), Box(2, 3, 4), Box(0.5, 1.5, 2.5)]
    eps_values = args.eps or [0.1, 0.25, 0.5]
    report = VerificationReport(
        "tube",
        inputs={
            "boxes": [(b.a, b.b, b.c) for b in boxes],
            "eps": eps_values,
            "samples": args.samples,
            "poses": args.poses,
        },
        seed=args.seed,
    )
    all_within = True
    worst_sigma = 0.0
    for i, box in enumerate(boxes):
        for j, eps in enumerate(eps_values):
            est = mc_tube_volume(box, eps, args.samples, seed=args.seed + 100 * i + j)
            closed = tube_volume(box, eps)
            sigmas = abs(est.value - closed) / est.std_error if est.std_error else 0.0
            worst_sigma = max(worst_sigma, sigmas)
            all_within &= sigmas < 3.0
    report.outputs["worst_mc_deviation_sigma"] = worst_sigma
    report.check("mc_volume_within_3_sigma", all_within, worst_sigma)

    fit = steiner_quadratic_fit(Box(1, 1, 1), [0.2, 0.3, 0.4, 0.5], args.samples, seed=args.seed)
    report.outputs["quadratic_coefficient"] = fit.coefficient
    report.outputs["quadratic_expected"] = fit.expected
    report.check("quadratic_coefficient_selects_edge_sum_pi", fit.selects_expected, fit.coefficient)
    report.check("quadratic_coefficient_within_5pct", fit.relative_error < 0.05, fit.relative_error)

    search = containment_search(Box(3, 1, 1), Box(1, 1, 1), args.poses, seed=args.seed)
    report.check("no_larger_edge_sum_fits", search.n_contained == 0, search.n_contained)
    return report, {}


def run_crofton(args) -> tuple[VerificationReport, dict]:
    from .tubes import crofton_area

    box = args.box_single
    report = VerificationReport(
        "crofton",
        inputs={"box": (box.a, box.b, box.c), "samples": args.samples},
        seed=args.seed,
    )
    est = crofton_area(box, args.samples, seed=args.seed)
    exact = box.surface_area
    rel = abs(est.value - exact) / exact
    report.outputs["estimate"] = est.value
    report.outputs["surface_area"] = exact
    report.outputs["std_error"] = est.std_error
    report.check("within_one_percent", rel < 0.01, rel)
    report.check("within_3_sigma", abs(est.value - exact) < 3 * est.std_error, est.std_error)
    return report, {}


def run_flux(args) -> tuple[VerificationReport, dict]:
    from .flux import (
        conservation_defects,
        design_divider_network,
        output_flux,
        solve_flux,
        thieves_protocol,
        three_way_network,
    )

    report = VerificationReport("flux", inputs={"p": args.p, "q": args.q}, seed=args.seed)
    net3 = three_way_network()
    fluxes3 = solve_flux(net3)
    by_edge = {net3.edges[i]: f for i, f in fluxes3.items()}
    sinks = sorted(f for (t, h), f in by_edge.items() if h.startswith("sink"))
    report.outputs["three_way_sinks"] = sinks
    report.outputs["three_way_trunk"] = by_edge[("trunk", "top")]
    report.check("three_way_sinks_exact_thirds", sinks == [Fraction(1, 3)] * 3, sinks)
    report.check("three_way_trunk_4_3", by_edge[("trunk", "top")] == Fraction(4, 3), by_edge[("trunk", "top")])
    report.check(
        "three_way_conservation",
        all(d == 0 for d in conservation_defects(net3, fluxes3).values()),
        True,
    )

    net = design_divider_network(args.p, args.q)
    got = output_flux(net)
    report.outputs["designed_output"] = got
    report.check("designer_output_exact", got == Fraction(args.p, args.q), got)
    sweep_ok = all(
        output_flux(design_divider_network(p, q)) == Fraction(p, q)
        for q in range(2, 17)
        for p in range(1, q)
    )
    report.check("designer_exact_for_q_up_to_16", sweep_ok, sweep_ok)

    lottery = thieves_protocol(seed=args.seed, rounds=args.rounds)
    report.outputs["lottery_probabilities"] = list(lottery.exact_probabilities)
    report.outputs["lottery_expected_tosses"] = lottery.expected_tosses
    report.outputs["lottery_frequencies"] = list(lottery.frequencies)
    report.check(
        "lottery_exact_thirds", lottery.exact_probabilities == (Fraction(1, 3),) * 3, True
    )
    report.check("lottery_tosses_8_3", lottery.expected_tosses == Fraction(8, 3), lottery.expected_tosses)
    freq_gap = max(abs(f - 1.0 / 3.0) for f in lottery.frequencies)
    four_sigma = 4.0 * math.sqrt((1.0 / 3.0) * (2.0 / 3.0) / args.rounds)
    report.check("lottery_simulation_close", freq_gap < four_sigma, freq_gap)

    files = {}
    if args.svg:
        files[args.svg] = _draw_flux_network(net, solve_flux(net)).to_string()
    return report, files


def run_family(args) -> tuple[VerificationReport, dict]:
    from .family import family_probability, plain_space, weekday_hour_space, weekday_space

    report = VerificationReport("family", inputs={"granularity": args.granularity}, seed=args.seed)
    space = {
        "none": plain_space(),
        "weekday": weekday_space(),
        "hour": weekday_hour_space(),
    }[args.granularity]
    expected = {
        "none": Fraction(1, 3),
        "weekday": Fraction(13, 27),
        "hour": Fraction(335, 671),
    }[args.granularity]
    got = family_probability(space, "one-is-distinguished")
    first = family_probability(space, "first-is-boy")
    report.outputs["both_boys_given_one_distinguished"] = got
    report.outputs["both_boys_given_first_is_boy"] = first
    report.check("distinguished_conditional_exact", got == expected, got)
    report.check("first_child_conditional_half", first == Fraction(1, 2), first)
    return report, {}


def run_table(args) -> tuple[VerificationReport, dict]:
    from .placement import (
        balance_square_table,
        flat_floor,
        grid_floor_from_file,
        saddle_floor,
        sine_floor,
    )

    report = VerificationReport(
        "table",
        inputs={"floor": args.floor, "center": args.center, "side": args.side},
        seed=args.seed,
    )
    if args.floor.startswith("grid:"):
        floor = grid_floor_from_file(args.floor[5:])
    else:
        name, _, param = args.floor.partition(":")
        makers = {"flat": flat_floor, "saddle": saddle_floor, "sine": sine_floor}
        if name not in makers or (param and name == "flat"):
            raise ValueError(f"unknown floor {args.floor!r}; use flat, saddle[:coef], sine[:amp], grid:PATH")
        floor = makers[name](float(param)) if param else makers[name]()
    center = tuple(float(x) for x in args.center.split(","))
    placement = balance_square_table(floor, side=args.side, center=center)
    worst = float(np.max(np.abs(placement.leg_residuals)))
    report.outputs["rotation"] = placement.rotation
    report.outputs["tilt"] = list(placement.tilt)
    report.outputs["height"] = placement.height
    report.outputs["any_rotation_balances"] = placement.any_rotation_balances
    tol = args.tol if args.tol is not None else 1e-9
    if floor.name == "flat":
        report.check("flat_floor_residual_zero", worst == 0.0, worst)
    else:
        report.check("all_legs_on_floor", worst < tol, worst)
    return report, {}


def run_cone(args) -> tuple[VerificationReport, dict]:
    from .placement import (
        CRITICAL_HALF_ANGLE_OVER_PI,
        Cone,
        NoTightLoopError,
        cone_sector_angle,
        critical_half_angle,
        loop_slips,
        tight_loop_length,
    )

    report = VerificationReport(
        "cone", inputs={"alpha": args.alpha, "knot_slant": args.knot}, seed=args.seed
    )
    report.outputs["critical_half_angle_over_pi"] = CRITICAL_HALF_ANGLE_OVER_PI
    report.check(
        "critical_half_angle_exact_pi_over_6",
        CRITICAL_HALF_ANGLE_OVER_PI == Fraction(1, 6) and critical_half_angle() == math.pi / 6,
        CRITICAL_HALF_ANGLE_OVER_PI,
    )
    cone = Cone(args.alpha, args.knot)
    report.outputs["sector_angle"] = cone_sector_angle(cone)
    report.outputs["slips"] = loop_slips(cone)
    try:
        report.outputs["tight_loop_length"] = tight_loop_length(cone)
    except NoTightLoopError:
        report.outputs["tight_loop_length"] = None

    grid = np.linspace(0.05, 1.5, 100)
    consistent = all(
        loop_slips(Cone(float(a))) == (cone_sector_angle(Cone(float(a))) >= math.pi - 1e-12)
        for a in grid
    )
    report.check("slip_iff_sector_at_least_half_turn", consistent, consistent)
    report.check("borderline_cone_slips", loop_slips(Cone(math.pi / 6)), True)
    boundary = tight_loop_length(Cone(math.pi / 6, args.knot))
    report.check(
        "boundary_loop_length_2_rho",
        abs(boundary - 2 * args.knot) < 1e-9 * args.knot,
        boundary,
    )
    return report, {}


def run_ovals(args) -> tuple[VerificationReport, dict]:
    from .ovals import (
        SupportOval,
        balanced_tangent_chords,
        outer_billiard,
        outer_billiard_jacobian,
        random_oval,
    )

    report = VerificationReport("ovals", seed=args.seed)
    outer = SupportOval.circle(3.0)
    inner = SupportOval.ellipse(2.0, 1.0)
    result = balanced_tangent_chords(outer, inner)
    report.outputs["balanced_chords"] = len(result.chords)
    report.check("at_least_two_balanced_chords", len(result.chords) >= 2, len(result.chords))
    worst_balance = max(
        abs(np.linalg.norm(c.endpoints[0] - c.tangency) - np.linalg.norm(c.endpoints[1] - c.tangency))
        for c in result.chords
    )
    report.check("chords_bisected_at_tangency", worst_balance < 1e-9, worst_balance)

    rng = np.random.default_rng(args.seed)
    worst_det = 0.0
    worst_inv = 0.0
    checked = 0
    while checked < 100:
        oval = random_oval(rng)
        x = rng.uniform(-5, 5, size=2)
        if np.linalg.norm(x) < 1.8:
            continue
        det = outer_billiard_jacobian(oval, x)
        worst_det = max(worst_det, abs(det - 1.0))
        y = outer_billiard(oval, x, "right")
        back = outer_billiard(oval, y, "left")
        worst_inv = max(worst_inv, float(np.linalg.norm(back - x)))
        checked += 1
    tol = args.tol if args.tol is not None else 1e-6
    report.outputs["worst_jacobian_gap"] = worst_det
    report.check("outer_billiard_area_preserving", worst_det < tol, worst_det)
    report.check("right_left_involution", worst_inv < 1e-9, worst_inv)
    return report, {}


def run_string(args) -> tuple[VerificationReport, dict]:
    from .confocal import ConfocalFamily, elliptic_coords
    from .ovals import SupportOval, string_curve, string_equal_angle_residual

    report = VerificationReport("string", inputs={"slack": args.slack}, seed=args.seed)
    oval = SupportOval.ellipse(2.0, 1.0)
    curve = string_curve(oval, args.slack, n_samples=args.samples_curve)
    family = ConfocalFamily(2.0, 1.0)
    lams = [elliptic_coords(family, s.point).lambda_e for s in curve.samples]
    lam = float(np.median(lams))
    worst_fit = 0.0
    for s in curve.samples:
        x, y = s.point
        val = x * x / (4 + lam) + y * y / (1 + lam) - 1.0
        grad = math.hypot(2 * x / (4 + lam), 2 * y / (1 + lam))
        worst_fit = max(worst_fit, abs(val) / grad)
    report.outputs["confocal_parameter"] = lam
    report.outputs["max_confocal_distance"] = worst_fit
    tol = args.tol if args.tol is not None else 1e-8
    report.check("string_curve_is_confocal_ellipse", worst_fit < tol, worst_fit)

    worst_angle = max(
        abs(string_equal_angle_residual(oval, args.slack, float(a)))
        for a in np.linspace(0, 2 * math.pi, 12, endpoint=False)
    )
    report.outputs["max_equal_angle_residual"] = worst_angle
    report.check("string_makes_equal_angles", worst_angle < tol, worst_angle)

    worst_closure = max(abs(s.closure_residual) for s in curve.samples)
    report.check("string_length_constant", worst_closure < 1e-10, worst_closure)
    report.outputs["curve_points"] = curve.points()

    files = {}
    if args.svg:
        canvas = SvgCanvas()
        grid = np.linspace(0, 2 * math.pi, 256, endpoint=False)
        canvas.polyline(oval.point(grid), color=PALETTE[0], closed=True)
        canvas.polyline(curve.points(), color=PALETTE[1], closed=True)
        files[args.svg] = canvas.to_string()
    return report, files


def run_equitangent(args) -> tuple[VerificationReport, dict]:
    from .equitangent import dodecagon_fixture, equitangent_replay

    report = VerificationReport(
        "equitangent", inputs={"ratio": args.ratio, "skew": args.skew}, seed=args.seed
    )
    poly = dodecagon_fixture(args.ratio, args.skew)
    trace = equitangent_replay(poly, samples_per_step=args.samples_step)
    report.outputs["min_margin"] = trace.min_margin
    report.outputs["closure_residual"] = trace.closure_residual
    report.outputs["margin_trace"] = [
        {"step": s.step, "fraction": s.fraction, "margin": s.margin} for s in trace.samples[:: args.samples_step // 8 or 1]
    ]
    report.check("schedule_support_valid", trace.all_supports_ok, trace.all_supports_ok)
    tol = args.tol if args.tol is not None else 1e-9
    report.check("terminal_chord_is_sixth_turn", trace.closure_residual < tol, trace.closure_residual)
    report.check("margin_strictly_positive", trace.min_margin > 0, trace.min_margin)
    return report, {}


def run_ivory(args) -> tuple[VerificationReport, dict]:
    from .confocal import ConfocalFamily, ivory_quadrilateral

    family = ConfocalFamily(args.a, args.b)
    report = VerificationReport(
        "ivory", inputs={"a": args.a, "b": args.b, "count": args.count}, seed=args.seed
    )
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    quads = []
    for _ in range(args.count):
        le = np.sort(rng.uniform(-family.b**2 + 0.05, 3.0, size=2))
        lh = np.sort(rng.uniform(-family.a**2 + 0.05, -family.b**2 - 0.05, size=2))
        quad = ivory_quadrilateral(family, le[0], le[1], lh[0], lh[1])
        worst = max(worst, quad.diagonal_gap)
        quads.append(quad)
    tol = (args.tol if args.tol is not None else 1e-9) * family.scale
    report.outputs["max_diagonal_gap"] = worst
    report.outputs["sample_vertices"] = {
        f"E{i}H{j}": v for (i, j), v in quads[0].vertices.items()
    }
    report.check("diagonals_equal", worst < tol, worst)

    files = {}
    if args.svg:
        files[args.svg] = _draw_confocal(family, quad=quads[0]).to_string()
    return report, files


def run_chasles(args) -> tuple[VerificationReport, dict]:
    from .confocal import ConfocalFamily, chasles_corpus

    family = ConfocalFamily(args.a, args.b)
    report = VerificationReport(
        "chasles", inputs={"a": args.a, "b": args.b, "count": args.count}, seed=args.seed
    )
    corpus = chasles_corpus(family, args.count, seed=args.seed)
    worst_h = max(rep.hyperbola_gap for *_, rep in corpus)
    worst_p = max(rep.pitot_gap for *_, rep in corpus)
    worst_i = max(rep.incircle_deviation for *_, rep in corpus)
    scale = family.scale
    tol = args.tol if args.tol is not None else 1e-9
    report.outputs["max_hyperbola_gap"] = worst_h
    report.outputs["max_pitot_gap"] = worst_p
    report.outputs["max_incircle_deviation"] = worst_i
    report.check("cross_vertices_on_confocal_hyperbola", worst_h < tol * scale**2, worst_h)
    report.check("circumscription_identity", worst_p < tol * scale, worst_p)
    report.check("incircle_exists", worst_i < 10 * tol * scale, worst_i)

    files = {}
    if args.svg:
        lam_outer, lam_inner, *_ , rep = corpus[0]
        files[args.svg] = _draw_confocal(family, chasles=(lam_outer, lam_inner, rep)).to_string()
    return report, files


def run_caustic(args) -> tuple[VerificationReport, dict]:
    from .confocal import ConfocalFamily, GrazingError, billiard_orbit

    family = ConfocalFamily(args.a, args.b)
    report = VerificationReport(
        "caustic",
        inputs={"a": args.a, "b": args.b, "orbits": args.orbits, "bounces": args.bounces},
        seed=args.seed,
    )
    rng = np.random.default_rng(args.seed)
    worst_std = 0.0
    first_orbit = None
    done = 0
    while done < args.orbits:
        t0 = float(rng.uniform(0, 2 * math.pi))
        ang = float(rng.uniform(0, 2 * math.pi))
        direction = np.array([math.cos(ang), math.sin(ang)])
        p0 = family.ellipse_point(0.0, t0)
        if family.member_residual(0.0, p0 + 1e-3 * direction) > 0:
            direction = -direction
        try:
            points, caustics = billiard_orbit(family, t0, direction, args.bounces)
        except GrazingError:
            continue
        worst_std = max(worst_std, float(np.std(caustics)))
        if first_orbit is None:
            first_orbit = (points, float(np.mean(caustics)))
        done += 1
    tol = args.tol if args.tol is not None else 1e-9
    report.outputs["worst_caustic_std"] = worst_std
    report.check("caustic_parameter_invariant", worst_std < tol, worst_std)

    files = {}
    if args.svg and first_orbit is not None:
        points, lam = first_orbit
        canvas = _draw_confocal(family, extra_members=[lam])
        canvas.polyline(np.array(points), color=PALETTE[3], width=0.006)
        files[args.svg] = canvas.to_string()
    return report, files


def run_pentagram(args) -> tuple[VerificationReport, dict]:
    from .pentagram import (
        dual_polygon,
        kasner_inscribed,
        pentagram_map,
        projectively_equivalent,
        random_convex_polygon,
    )

    report = VerificationReport(
        "pentagram", inputs={"n": args.n, "count": args.count}, seed=args.seed
    )
    rng = np.random.default_rng(args.seed)
    tol = args.tol if args.tol is not None else 1e-8

    if args.n == 5:
        worst_map = worst_dual = worst_kasner = 0.0
        first = None
        for _ in range(args.count):
            p = random_convex_polygon(5, rng)
            if first is None:
                first = p
            t = pentagram_map(p)
            worst_map = max(
                worst_map,
                projectively_equivalent(p, t, try_all_alignments=False, shift=2).residual,
            )
            worst_dual = max(worst_dual, projectively_equivalent(p, dual_polygon(p)).residual)
            lhs = pentagram_map(kasner_inscribed(p))
            rhs = kasner_inscribed(pentagram_map(p))
            gap = float(np.max(np.linalg.norm(lhs.affine() - rhs.affine(), axis=1)))
            worst_kasner = max(worst_kasner, gap / p.diameter())
        report.outputs["worst_map_residual"] = worst_map
        report.outputs["worst_duality_residual"] = worst_dual
        report.outputs["worst_kasner_gap_relative"] = worst_kasner
        report.outputs["sample_polygon_affine"] = first.affine()
        report.outputs["sample_polygon_homogeneous"] = first.vertices
        report.check("pentagon_equivalent_to_image", worst_map < tol, worst_map)
        report.check("pentagon_self_dual", worst_dual < tol, worst_dual)
        report.check("inscribed_tangency_commutes_with_map", worst_kasner < tol, worst_kasner)
        poly_for_figure = first
    else:
        worst = 0.0
        first = None
        for _ in range(args.count):
            p = random_convex_polygon(args.n, rng)
            if first is None:
                first = p
            image = pentagram_map(pentagram_map(p)) if args.n == 6 else pentagram_map(p)
            worst = max(worst, projectively_equivalent(p, image).residual)
        if args.n == 6:
            report.outputs["worst_double_map_residual"] = worst
            report.check("hexagon_double_map_is_identity", worst < tol, worst)
        else:
            report.outputs["worst_map_residual"] = worst
            report.check("generic_polygon_not_equivalent", worst > tol, worst)
        poly_for_figure = first

    files = {}
    if args.svg and poly_for_figure is not None:
        from .pentagram import pentagram_map as tmap

        canvas = SvgCanvas()
        poly = poly_for_figure
        for i in range(4):
            canvas.polyline(poly.affine(), color=PALETTE[i % len(PALETTE)], closed=True)
            try:
                poly = tmap(poly)
            except Exception:
                break
        files[args.svg] = canvas.to_string()
    return report, files


def run_fta(args) -> tuple[VerificationReport, dict]:
    from .polyroots import discriminant, durand_kerner, homotopy_roots

    report = VerificationReport(
        "fta", inputs={"degree": args.degree, "count": args.count}, seed=args.seed
    )
    rng = np.random.default_rng(args.seed)
    quad_ok = all(
        discriminant([a0, a1, Fraction(1)]) == a1 * a1 - 4 * a0
        for a0, a1 in (
            (Fraction(int(rng.integers(-9, 10))), Fraction(int(rng.integers(-9, 10))))
            for _ in range(20)
        )
    )
    report.check("quadratic_discriminant_closed_form", quad_ok, quad_ok)
    cubic_ok = all(
        discriminant([q, p, Fraction(0), Fraction(1)]) == -4 * p**3 - 27 * q**2
        for p, q in (
            (Fraction(int(rng.integers(-9, 10))), Fraction(int(rng.integers(-9, 10))))
            for _ in range(20)
        )
    )
    report.check("depressed_cubic_discriminant_closed_form", cubic_ok, cubic_ok)

    worst_residual = 0.0
    worst_oracle = 0.0
    for i in range(args.count):
        coeffs = [int(c) for c in rng.integers(-9, 10, size=args.degree)] + [1]
        result = homotopy_roots(coeffs, seed=args.seed + i)
        worst_residual = max(worst_residual, result.certificate.max_residual)
        oracle = durand_kerner(coeffs)
        for z in result.roots:
            worst_oracle = max(worst_oracle, min(abs(z - w) for w in oracle))
    report.outputs["worst_root_residual"] = worst_residual
    report.outputs["worst_oracle_distance"] = worst_oracle
    scale = 10.0
    report.check("tracked_roots_satisfy_target", worst_residual < 1e-10 * scale, worst_residual)
    report.check("tracker_agrees_with_oracle", worst_oracle < 1e-8, worst_oracle)
    return report, {}


def run_swallowtail(args) -> tuple[VerificationReport, dict]:
    from .polyroots import swallowtail_sample

    u_grid = args.u or [-2.0, -1.0, 1.0, 2.0]
    v_grid = args.v or [round(-0.5 + k / 4.0, 2) for k in range(5)]
    report = VerificationReport(
        "swallowtail", inputs={"u_grid": u_grid, "v_grid": v_grid}, seed=args.seed
    )
    sample = swallowtail_sample(
        [Fraction(str(u)) for u in u_grid], [Fraction(str(v)) for v in v_grid]
    )
    report.outputs["points"] = len(sample.points)
    report.outputs["triples_uvw"] = [list(p) for p in sample.points[:200]]
    report.outputs["sheet_counts"] = {f"{u},{v}": c for (u, v), c in sample.sheet_counts.items()}

    def in_cusp(u: float, v: float) -> bool:
        # the slope cubic 4z^3 + 2uz + v has three real roots here
        return -(u**3) / 2.0 - 27.0 * v * v / 16.0 > 1e-9

    cusp_ok = all(
        count == 3 for (u, v), count in sample.sheet_counts.items() if in_cusp(u, v)
    )
    flat_ok = all(count == 1 for (u, v), count in sample.sheet_counts.items() if u > 0)
    report.check("three_sheets_in_cusp_region", cusp_ok, cusp_ok)
    report.check("one_sheet_for_positive_u", flat_ok, flat_ok)

    files = {}
    if args.csv:
        lines = ["u,v,w"] + [f"{u},{v},{w}" for u, v, w in sample.points]
        files[args.csv] = "\n".join(lines) + "\n"
    if args.svg:
        canvas = SvgCanvas()
        for i, u in enumerate(sorted({p[0] for p in sample.points})):
            slice_pts = sorted((v, w) for uu, v, w in sample.points if uu == u)
            for v, w in slice_pts:
                canvas.dot((v, w), radius=0.03, color=PALETTE[i % len(PALETTE)])
        files[args.svg] = canvas.to_string()
    return report, files


# -- figure helpers -------------------------------------------------------------


def _draw_flux_network(net, fluxes) -> SvgCanvas:
    depth = {name: 0 for name, kind in net.nodes.items() if kind == "source"}
    frontier = list(depth)
    while frontier:
        nxt = []
        for node in frontier:
            for i in net.out_edges(node):
                head = net.edges[i][1]
                if head not in depth:
                    depth[head] = depth[node] + 1
                    nxt.append(head)
        frontier = nxt
    layers: dict[int, list[str]] = {}
    for name in net.nodes:
        layers.setdefault(depth.get(name, 0), []).append(name)
    pos = {}
    for d, names in sorted(layers.items()):
        for i, name in enumerate(sorted(names)):
            pos[name] = np.array([2.0 * d, -1.5 * i])
    canvas = SvgCanvas()
    for i, (tail, head) in enumerate(net.edges):
        a, b = pos[tail], pos[head]
        canvas.line(a, b, color=PALETTE[0], width=0.03)
        mid = (a + b) / 2
        canvas.text(mid + np.array([0.05, 0.1]), str(fluxes[i]), size=0.22)
    for name, kind in net.nodes.items():
        color = {"source": PALETTE[2], "sink": PALETTE[1], "splitter": PALETTE[0], "merger": PALETTE[3]}[kind]
        canvas.dot(pos[name], radius=0.12, color=color)
        canvas.text(pos[name] + np.array([0.12, 0.18]), name, size=0.2)
    return canvas


def _draw_confocal(family, quad=None, chasles=None, extra_members=None) -> SvgCanvas:
    canvas = SvgCanvas()
    ts = np.linspace(0, 2 * math.pi, 256, endpoint=False)
    members = [-0.5, 0.0, 1.0, 2.5]
    if extra_members:
        members = sorted(set(members) | {round(m, 6) for m in extra_members if m > -family.b**2})
    for lam in members:
        if lam <= -family.b**2:
            continue
        pts = np.column_stack(
            [
                math.sqrt(family.a**2 + lam) * np.cos(ts),
                math.sqrt(family.b**2 + lam) * np.sin(ts),
            ]
        )
        canvas.polyline(pts, color=PALETTE[0], width=0.008, closed=True)
    ss = np.linspace(-2.0, 2.0, 128)
    for lam in (-3.5, -2.5, -1.5):
        ax = math.sqrt(family.a**2 + lam)
        by = math.sqrt(-(family.b**2 + lam))
        for sign in (1.0, -1.0):
            branch = np.column_stack([sign * ax * np.cosh(ss), by * np.sinh(ss)])
            canvas.polyline(branch, color=PALETTE[2], width=0.008)
    for focus in (family.focal_distance, -family.focal_distance):
        canvas.dot((focus, 0.0), radius=0.04, color=PALETTE[5])
    if quad is not None:
        corners = [quad.vertices[(0, 0)], quad.vertices[(0, 1)], quad.vertices[(1, 1)], quad.vertices[(1, 0)]]
        canvas.polyline(corners, color=PALETTE[1], width=0.02, closed=True)
        canvas.line(quad.vertices[(0, 0)], quad.vertices[(1, 1)], color=PALETTE[3], width=0.015)
        canvas.line(quad.vertices[(0, 1)], quad.vertices[(1, 0)], color=PALETTE[3], width=0.015)
    if chasles is not None:
        _, _, rep = chasles
        verts = rep.vertices
        canvas.polyline(
            [verts["A"], verts["C"], verts["B"], verts["D"]], color=PALETTE[1], width=0.02, closed=True
        )
        canvas.circle(rep.incircle_center, rep.incircle_radius, color=PALETTE[4], width=0.015)
    return canvas


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoverify",
        description="Self-checking verifications of classic geometry puzzles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomized checks")
    common.add_argument("--tol", type=float, default=None, help="override the primary tolerance")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spotit", parents=[common], help="matching-card deck from a finite plane")
    p.add_argument("--q", type=int, default=7, help="prime plane order")
    p.add_argument("--deck-out", default=None, help="write the deck as JSON")
    p.set_defaults(runner=run_spotit)

    p = sub.add_parser("clock", parents=[common], help="ambiguous equal-hand clock readings")
    p.set_defaults(runner=run_clock)

    p = sub.add_parser("frame", parents=[common], help="frame-on-nails rope words")
    p.add_argument("--nails", type=int, default=4)
    p.add_argument("--scheme", choices=["left-nested", "balanced", "both"], default="both")
    p.set_defaults(runner=run_frame)

    p = sub.add_parser("sphere", parents=[common], help="spherical cevian concurrency")
    p.add_argument("--triangles", type=int, default=1000)
    p.set_defaults(runner=run_sphere)

    p = sub.add_parser("tent", parents=[common], help="south-west-north walk locus")
    p.add_argument("--radius", type=float, default=6371.0)
    p.add_argument("--distance", type=float, default=10.0)
    p.add_argument("--rings", type=int, default=10)
    p.set_defaults(runner=run_tent)

    p = sub.add_parser("park", parents=[common], help="car control brackets and flows")
    p.add_argument("--wheelbase", type=float, default=1.0)
    p.set_defaults(runner=run_park)

    p = sub.add_parser("tube", parents=[common], help="box neighborhood volumes")
    p.add_argument("--box", type=_parse_box, action="append", help="a,b,c (repeatable)")
    p.add_argument("--eps", type=float, action="append")
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--poses", type=int, default=20_000)
    p.set_defaults(runner=run_tube)

    p = sub.add_parser("crofton", parents=[common], help="mean-shadow surface area")
    p.add_argument("--box", dest="box_single", type=_parse_box, default=_parse_box("1,1,1"))
    p.add_argument("--samples", type=int, default=400_000)
    p.set_defaults(runner=run_crofton)

    p = sub.add_parser("flux", parents=[common], help="flow dividers and the coin lottery")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--svg", default=None, help="write the divider network figure")
    p.set_defaults(runner=run_flux)

    p = sub.add_parser("family", parents=[common], help="two-child probabilities")
    p.add_argument("--granularity", choices=["none", "weekday", "hour"], default="weekday")
    p.set_defaults(runner=run_family)

    p = sub.add_parser("table", parents=[common], help="square table on an uneven floor")
    p.add_argument("--floor", default="saddle", help="flat | saddle | sine | grid:PATH")
    p.add_argument("--center", default="0.4,0.15")
    p.add_argument("--side", type=float, default=1.0)
    p.set_defaults(runner=run_table)

    p = sub.add_parser("cone", parents=[common], help="loop on a conical mountain")
    p.add_argument("--alpha", type=float, default=math.pi / 8)
    p.add_argument("--knot", type=float, default=1.0)
    p.set_defaults(runner=run_cone)

    p = sub.add_parser("ovals", parents=[common], help="balanced chords and outer billiards")
    p.set_defaults(runner=run_ovals)

    p = sub.add_parser("string", parents=[common], help="taut-string curve construction")
    p.add_argument("--slack", type=float, default=1.0)
    p.add_argument("--samples-curve", type=int, default=64)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_string)

    p = sub.add_parser("equitangent", parents=[common], help="chord walk with unequal tangents")
    p.add_argument("--ratio", type=float, default=0.93)
    p.add_argument("--skew", type=float, default=0.13)
    p.add_argument("--samples-step", type=int, default=64)
    p.set_defaults(runner=run_equitangent)

    p = sub.add_parser("ivory", parents=[common], help="equal diagonals in confocal quads")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_ivory)

    p = sub.add_parser("chasles", parents=[common], help="tangent quadrilateral checks")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_chasles)

    p = sub.add_parser("caustic", parents=[common], help="billiard caustic invariance")
    p.add_argument("--a", type=float, default=2.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--orbits", type=int, default=20)
    p.add_argument("--bounces", type=int, default=100)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_caustic)

    p = sub.add_parser("pentagram", parents=[common], help="diagonal-map polygon dynamics")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_pentagram)

    p = sub.add_parser("fta", parents=[common], help="discriminants and root tracking")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(runner=run_fta)

    p = sub.add_parser("swallowtail", parents=[common], help="quartic double-root surface")
    p.add_argument("--u", type=float, action="append")
    p.add_argument("--v", type=float, action="append")
    p.add_argument("--csv", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(runner=run_swallowtail)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, files = args.runner(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path, content in files.items():
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
