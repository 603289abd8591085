// Batch driver: scene simulation, closure condition checks, periodic-orbit
// search, SVG rendering, and the cross-validation harness.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "poncelet/acceptance.hpp"
#include "poncelet/json_io.hpp"
#include "poncelet/render.hpp"
#include "poncelet/search.hpp"

using namespace poncelet;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

int exit_code_for(const Error& e) {
  static const std::set<std::string> dynamics = {
      "PointNotOnQuadric", "GrazingIncidence",  "EscapeDetected",
      "CornerHit",         "InflectionAmbiguous", "UnbalancedCounts",
      "OrderViolation",    "IntegrationFailure",  "EmptyRange"};
  if (e.name() == "SearchExhausted") return 4;
  return dynamics.count(e.name()) ? 3 : 2;
}

void emit_run_report(const std::string& command, const std::string& inputs_digest,
                     const json& outputs) {
  json rep;
  rep["format_version"] = kFormatVersion;
  rep["command"] = command;
  rep["inputs_digest"] = inputs_digest;
  rep["outputs"] = outputs;
  rep["versions"] = {{"tool", kToolVersion}};
  rep["seed"] = 0;  // all randomness in the library is fixed-seeded
  std::cout << rep.dump(1) << "\n";
}

unsigned effective_bits(unsigned cli_bits, const Scene* sc) {
  if (cli_bits) return cli_bits;
  if (const char* env = std::getenv("PONCELET_PRECISION_BITS")) {
    long v = std::atol(env);
    if (v >= 24 && v <= 65536) return static_cast<unsigned>(v);
  }
  return sc ? sc->precision_bits : 256;
}

PencilDiscriminant scene_pencil(const Scene& sc) {
  if (sc.caustics.empty())
    throw SchemaError("this check needs scene.caustics");
  std::vector<BigReal> roots;
  for (double a : sc.semi_axes) roots.push_back(BigReal(a));
  roots.push_back(BigReal(sc.caustics[0]));
  return {Poly<BigReal>::from_roots_neg(roots)};
}

ConditionReport example1_report(const Scene& sc, double gamma, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  std::vector<BigReal> roots;
  for (double a : sc.semi_axes) roots.push_back(BigReal(a));
  roots.push_back(BigReal(sc.caustics.at(0)));
  Poly<BigReal> D = Poly<BigReal>::from_roots_neg(roots);
  TruncatedSeries C = sqrt_of_poly(D, BigReal(0), 1, 5, bits);
  TruncatedSeries B = sqrt_of_poly(D, BigReal(gamma), -1, 5, bits);
  ConditionReport rep;
  rep.condition = "example1";
  rep.precision_bits = bits;
  rep.matrix = example1_matrix(B, C, BigReal(gamma));
  BigReal scale(1);
  for (int i = 0; i < 3; ++i) {
    BigReal s(0);
    for (int j = 0; j < 3; ++j) s += rep.matrix.at(i, j) * rep.matrix.at(i, j);
    scale *= sqrt(s);
  }
  BigReal resid = scale == 0 ? BigReal(0) : BigReal(abs(determinant(rep.matrix)) / scale);
  rep.residual = static_cast<double>(resid);
  rep.decision = resid < pow2(-static_cast<long>(bits / 2)) ? Decision::satisfied
                                                            : Decision::not_satisfied;
  rep.certified = false;  // single-precision convenience check
  return rep;
}

std::vector<std::pair<double, double>> scene_ranges(const Scene& sc) {
  ConfocalFamily fam = sc.family();
  if (sc.constrained) {
    if (sc.caustics.empty()) throw SchemaError("constrained check needs scene.caustics");
    double gamma = sc.walls.at(0).lambda;
    return {{fam.a[1], fam.a[0]}, {gamma, sc.caustics[0]}};
  }
  Domain dom{fam, sc.walls};
  AdmissiblePolynomial ap = admissibility_polynomial(fam, sc.caustics);
  return lambda_ranges(dom, ap);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"confocal quadric billiards: simulation and closure certificates"};
  app.require_subcommand(1);

  std::string scene_path, out_path, trajectory_path, projection = "xy";
  std::string check_kind;
  int bounces = 100;
  unsigned precision_bits = 0;
  long max_coeff = 0;
  int period = 3;
  int opt_m = 4, opt_k = 8;
  double opt_gamma = 0, opt_alpha = 0, opt_beta1 = 0, opt_beta2 = 0;
  std::vector<double> opt_lambdas;
  std::vector<int> opt_signs, opt_counts;

  CLI::App* sim = app.add_subcommand("simulate", "trace a billiard scene");
  sim->add_option("--scene", scene_path)->required();
  sim->add_option("--out", out_path)->required();
  sim->add_option("--bounces", bounces);
  sim->add_option("--precision-bits", precision_bits);

  CLI::App* chk = app.add_subcommand("check", "evaluate a closure condition");
  chk->add_option("kind", check_kind)->required();
  chk->add_option("--scene", scene_path)->required();
  chk->add_option("--out", out_path);
  chk->add_option("--precision-bits", precision_bits);
  chk->add_option("--max-coeff", max_coeff);
  chk->add_option("--m", opt_m);
  chk->add_option("--k", opt_k);
  chk->add_option("--gamma", opt_gamma);
  chk->add_option("--alpha", opt_alpha);
  chk->add_option("--beta1", opt_beta1);
  chk->add_option("--beta2", opt_beta2);
  chk->add_option("--lambdas", opt_lambdas);
  chk->add_option("--signs", opt_signs);
  chk->add_option("--counts", opt_counts);

  CLI::App* sp = app.add_subcommand("search-periodic", "find a closed trajectory");
  sp->add_option("--scene", scene_path)->required();
  sp->add_option("--period", period)->required();
  sp->add_option("--out", out_path);
  sp->add_option("--precision-bits", precision_bits);

  CLI::App* ren = app.add_subcommand("render", "draw a trajectory document as SVG");
  ren->add_option("--trajectory", trajectory_path)->required();
  ren->add_option("--out", out_path)->required();
  ren->add_option("--projection", projection);

  CLI::App* per = app.add_subcommand("periods", "real period lattice of the scene's curve");
  per->add_option("--scene", scene_path)->required();
  per->add_option("--out", out_path);

  CLI::App* xv = app.add_subcommand("xvalidate", "run the cross-validation suite");
  xv->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage problems share the input-error exit code; --help stays 0
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  auto t0 = std::chrono::steady_clock::now();

  try {
    if (sim->parsed()) {
      std::string text = read_text_file(scene_path);
      Scene sc = parse_scene(text);
      resolve_start(sc);
      ConfocalFamily fam = sc.family();
      Trajectory traj;
      if (sc.is_game())
        traj = play_ordered_game(fam, sc.game_betas, sc.game_signature, sc.start_point,
                                 sc.start_direction,
                                 bounces / static_cast<int>(sc.game_betas.size()));
      else if (sc.constrained)
        traj = geodesic_billiard_on_ellipsoid(fam, sc.walls, sc.start_point,
                                              sc.start_direction, bounces);
      else
        traj = simulate(Domain{fam, sc.walls}, sc.start_point, sc.start_direction, bounces);
      write_text_file(out_path, trajectory_to_json(sc, traj));
      emit_run_report("simulate", content_digest(text), {{"trajectory", out_path}});
    } else if (chk->parsed()) {
      std::string text = read_text_file(scene_path);
      Scene sc = parse_scene(text);
      unsigned bits = effective_bits(precision_bits, &sc);
      ConfocalFamily fam = sc.family();
      std::string doc;
      bool good = false;

      if (check_kind == "lebesgue" || check_kind == "corollary1" ||
          check_kind == "example1" || check_kind == "prop1" || check_kind == "prop2") {
        ConditionReport rep;
        if (check_kind == "lebesgue") {
          std::vector<BigReal> ls(opt_lambdas.begin(), opt_lambdas.end());
          rep = lebesgue_condition(scene_pencil(sc), ls, bits, opt_signs);
        } else if (check_kind == "corollary1") {
          rep = corollary1_condition(scene_pencil(sc), BigReal(opt_gamma), opt_m, bits);
        } else if (check_kind == "example1") {
          rep = example1_report(sc, opt_gamma, bits);
        } else if (check_kind == "prop1") {
          std::vector<BigReal> ca(sc.caustics.begin(), sc.caustics.end());
          rep = prop1_condition(fam, opt_beta1, opt_beta2, ca, opt_m, bits);
        } else {
          rep = prop2_condition(fam, opt_gamma, opt_alpha, opt_k, bits);
        }
        good = rep.decision != Decision::not_satisfied;
        doc = condition_report_to_json(rep);
      } else if (check_kind == "theorem1" || check_kind == "theorem3") {
        auto ranges = scene_ranges(sc);
        WindingCounts wc;
        wc.n = opt_counts;
        if (wc.n.empty()) wc.n.assign(ranges.size(), 0);
        HyperellipticCurve curve = check_kind == "theorem1"
                                       ? curve_gamma(fam, sc.caustics)
                                       : curve_gamma1(fam, sc.caustics);
        long sum = 0;
        for (int n : wc.n) sum += n;
        long M = max_coeff ? max_coeff : 2 * (sum + fam.dim());
        CheckReport rep = check_kind == "theorem1" ? theorem1_check(curve, ranges, wc, M)
                                                   : theorem3_check(curve, ranges, wc, M);
        good = rep.accepted;
        doc = check_report_to_json(rep);
      } else if (check_kind == "theorem2" || check_kind == "theorem4") {
        if (!sc.is_game()) throw SchemaError("theorem2/4 need a game scene");
        HyperellipticCurve curve = check_kind == "theorem2"
                                       ? curve_gamma(fam, sc.caustics)
                                       : curve_gamma1(fam, sc.caustics);
        long M = max_coeff ? max_coeff
                           : 2 * static_cast<long>(sc.game_betas.size() + fam.dim());
        CheckReport rep = check_kind == "theorem2"
                              ? theorem2_check(curve, sc.game_betas, sc.game_signature,
                                               sc.caustics, M)
                              : theorem4_check(curve, sc.game_betas, sc.game_signature,
                                               sc.caustics, M);
        good = rep.accepted;
        doc = check_report_to_json(rep);
      } else {
        throw SchemaError("unknown check kind: " + check_kind);
      }

      if (!out_path.empty()) write_text_file(out_path, doc);
      emit_run_report("check " + check_kind, content_digest(text),
                      out_path.empty() ? json(json::parse(doc)) : json({{"report", out_path}}));
      if (!good) return 1;
    } else if (sp->parsed()) {
      std::string text = read_text_file(scene_path);
      Scene sc = parse_scene(text);
      ConfocalFamily fam = sc.family();
      json outputs;
      if (fam.dim() == 2) {
        D2Closure c = d2_find_caustic_for_period(fam, period);
        if (c.vertex_error > 1e-6) throw SearchExhausted("closure defect too large");
        outputs["caustic"] = c.caustic;
        outputs["period"] = c.period;
        outputs["vertex_error"] = c.vertex_error;
        if (!out_path.empty()) {
          Scene traced = sc;
          traced.caustics = {c.caustic};
          std::vector<double> dir = {c.vertices[1][0] - c.vertices[0][0],
                                     c.vertices[1][1] - c.vertices[0][1]};
          Trajectory t = simulate(Domain{fam, sc.walls}, c.vertices[0], dir, period);
          write_text_file(out_path, trajectory_to_json(traced, t));
          outputs["trajectory"] = out_path;
        }
      } else {
        auto c = d3_find_closed_orbit(fam, {period}, 40, 1e-9);
        if (!c) throw SearchExhausted("no closed orbit in the scanned direction grid");
        outputs["caustics"] = c->caustics;
        outputs["period"] = c->period;
        outputs["defect"] = c->defect;
        if (!out_path.empty()) {
          Scene traced = sc;
          traced.caustics = {c->caustics.begin(), c->caustics.end()};
          Trajectory t = simulate(Domain{fam, sc.walls}, c->start, c->direction, c->period);
          write_text_file(out_path, trajectory_to_json(traced, t));
          outputs["trajectory"] = out_path;
        }
      }
      emit_run_report("search-periodic", content_digest(text), outputs);
    } else if (ren->parsed()) {
      std::string text = read_text_file(trajectory_path);
      write_text_file(out_path, render_trajectory_svg(text, projection));
      emit_run_report("render", content_digest(text), {{"svg", out_path}});
    } else if (per->parsed()) {
      std::string text = read_text_file(scene_path);
      Scene sc = parse_scene(text);
      HyperellipticCurve curve = curve_gamma(sc.family(), sc.caustics);
      PeriodLattice lat = real_period_lattice(curve);
      json outputs;
      outputs["genus"] = lat.genus;
      outputs["generators"] = lat.gens;
      outputs["shortest"] = lat.shortest;
      outputs["notes"] = lat.notes;
      if (!out_path.empty()) write_text_file(out_path, json(outputs).dump(1));
      emit_run_report("periods", content_digest(text), outputs);
    } else if (xv->parsed()) {
      AcceptanceReport rep = run_acceptance();
      std::string table = acceptance_table(rep);
      if (!out_path.empty())
        write_text_file(out_path, table);
      else
        std::cout << table;
      std::fprintf(stderr, "elapsed: %.1f s\n",
                   std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                       .count());
      if (!rep.all_passed()) return 1;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  std::fprintf(stderr, "elapsed: %.1f s\n",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return 0;
}
