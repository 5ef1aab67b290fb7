#include <chrono>
#include <iomanip>
#include <sstream>

#include "fixtures.hpp"
#include "problem.hpp"

#include "autoclose/counterexamples.hpp"
#include "autoclose/errors.hpp"

namespace autoclose::cli {

namespace {

int exit_code_for(FailureKind kind) {
  switch (kind) {
    case FailureKind::not_in_level_image:
    case FailureKind::not_a_cocycle:
    case FailureKind::inconsistent_target: return kNotSolvable;
    case FailureKind::unstabilized:
    case FailureKind::target_too_short:
    case FailureKind::defect_unsolvable: return kDepthInsufficient;
  }
  return kNotSolvable;
}

std::string status_for(FailureKind kind) {
  switch (kind) {
    case FailureKind::not_in_level_image: return "not_solvable";
    case FailureKind::not_a_cocycle: return "not_a_cocycle";
    case FailureKind::inconsistent_target: return "inconsistent_target";
    default: return "depth_insufficient";
  }
}

json bools(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

json checks_json(const CertificateChecks& c) {
  return {{"t_equation", bools(c.t_equation)},
          {"lift", bools(c.lift)},
          {"consistency", bools(c.consistency)},
          {"level_equation", bools(c.level_equation)}};
}

json certificate_json(const PreimageCertificate& cert) {
  json ell = json::array();
  for (auto l : cert.ell) ell.push_back(l);
  return {{"v", to_json(cert.v)},
          {"lifts", to_json(cert.lifts)},
          {"ell", ell},
          {"checks", checks_json(cert.checks)},
          {"depth_conditional", cert.depth_conditional},
          {"verified", cert.verified()}};
}

json stabilization_json(const std::vector<StabilizationRecord>& table) {
  json out = json::array();
  for (const auto& r : table) {
    out.push_back({{"level", r.level},
                   {"ell", r.ell},
                   {"stabilized", r.stabilized},
                   {"certified", r.certified},
                   {"horizon", r.horizon},
                   {"kernel_image_dim", r.kernel_image.dim()}});
  }
  return out;
}

std::string table_text(const PreimageCertificate& cert) {
  std::ostringstream os;
  os << std::left << std::setw(7) << "level" << std::setw(7) << "ell" << std::setw(10) << "T(lift)" << std::setw(8) << "lift" << std::setw(13)
     << "consistent" << "T_i(v_i)\n";
  auto yn = [](bool b) { return b ? "ok" : "FAIL"; };
  for (std::size_t k = 0; k < cert.v.size(); ++k) {
    os << std::setw(7) << k + 1 << std::setw(7) << cert.ell[k] << std::setw(10) << yn(cert.checks.t_equation[k]) << std::setw(8)
       << yn(cert.checks.lift[k]) << std::setw(13) << yn(cert.checks.consistency[k]) << yn(cert.checks.level_equation[k]) << "\n";
  }
  os << (cert.verified() ? "certificate verified" : "certificate FAILED verification")
     << (cert.depth_conditional ? " (stabilization observed, not certified)\n" : "\n");
  return os.str();
}

void fill_solve(Report& report, const TowerMap& map, const SolveResult& result, const ClosureOptions& options, Level depth) {
  if (const auto* cert = std::get_if<PreimageCertificate>(&result)) {
    report.status = cert->verified() ? "ok" : "certificate_failed";
    report.exit_code = cert->verified() ? kOk : kNotSolvable;
    report.result["certificate"] = certificate_json(*cert);
    report.result["stabilization"] = stabilization_json(stabilization_table(map, depth, options));
    report.human += table_text(*cert);
    return;
  }
  const auto& failure = std::get<SolveFailure>(result);
  report.status = status_for(failure.kind);
  report.exit_code = exit_code_for(failure.kind);
  report.result["failure"] = {{"kind", to_string(failure.kind)}, {"level", failure.level}, {"message", failure.message}};
  report.human += status_for(failure.kind) + ": " + failure.message + "\n";
}

void run_solve(const ProblemDocument& doc, Report& report) {
  SolveFixture fx = build_solve(doc);
  report.result["depth"] = fx.depth;
  report.result["window"] = fx.options.window;
  report.result["target"] = to_json(fx.w);
  SolveResult result = construct_preimage(fx.map, fx.w, fx.depth, fx.options);
  fill_solve(report, fx.map, result, fx.options, fx.depth);
  report.problem = to_json(doc);
}

json cochain_json(const CochainPrefix& c) { return {{"degree", c.degree}, {"radius", c.radius}, {"values", to_json(c.values)}}; }

void run_cohom(const ProblemDocument& doc, Report& report) {
  CohomFixture fx = build_cohom(doc);
  const BarComplex& bc = fx.complex;
  report.result["group"] = bc.group().describe();
  report.result["degree"] = fx.degree;
  report.result["mode"] = fx.mode;
  if (fx.mode == "dims") {
    CohomologyDims d = finite_cohomology_dims(bc, fx.degree);
    report.status = "ok";
    report.result["dims"] = {{"cocycles", d.cocycles}, {"coboundaries", d.coboundaries}, {"cohomology", d.cohomology}};
    std::ostringstream os;
    os << bc.group().describe() << ", p = " << fx.degree << ": dim Z = " << d.cocycles << ", dim B = " << d.coboundaries
       << ", dim H = " << d.cohomology << "\n";
    report.human = os.str();
    return;
  }
  const CochainPrefix& z = *fx.cochain;
  if (fx.mode == "check") {
    DefectReport defect = bc.cocycle_defect(z);
    json defects = json::array();
    for (const auto& d : defect.defects) {
      json tuple = json::array();
      for (const auto& g : d.tuple) tuple.push_back(bc.group().format(g));
      defects.push_back({{"tuple", tuple}, {"value", to_json(d.value)}});
    }
    report.result["checked"] = defect.checked;
    report.result["unchecked"] = defect.unchecked;
    report.result["defect_count"] = defect.defect_count;
    report.result["defects"] = defects;
    report.result["block_too_small"] = defect.block_too_small();
    report.status = defect.is_cocycle() ? "ok" : "not_a_cocycle";
    report.exit_code = defect.is_cocycle() ? kOk : kNotSolvable;
    std::ostringstream os;
    os << "checked " << defect.checked << " tuples (" << defect.unchecked << " outside the block), " << defect.defect_count << " defects\n";
    if (defect.block_too_small()) os << "block too small to check the cocycle identity\n";
    report.human = os.str();
    return;
  }
  report.result["depth"] = fx.depth;
  report.result["window"] = fx.options.window;
  CoboundarySolution sol = solve_coboundary(bc, z, fx.depth, fx.options);
  fill_solve(report, bc.relabeled_coboundary(fx.degree), sol.result, fx.options, fx.depth);
  if (sol.preimage) {
    report.result["preimage"] = cochain_json(*sol.preimage);
    const CochainPrefix dz = bc.apply_coboundary(*sol.preimage, fx.depth);
    const bool matches = dz.values == bc.restrict(z, fx.depth).values;
    report.result["coboundary_matches"] = matches;
    report.human += matches ? "d f' = z on B_" + std::to_string(fx.depth) + "\n" : "d f' differs from z\n";
    if (!matches) {
      report.status = "certificate_failed";
      report.exit_code = kNotSolvable;
    }
  }
  report.problem = to_json(doc);
}

IntBandSystem parse_q(const Node& node, Level depth) {
  std::string text = node.as_string();
  bool periodic = false;
  const std::string dots = "...";
  if (text.size() >= dots.size() && text.compare(text.size() - dots.size(), dots.size(), dots) == 0) {
    periodic = true;
    text.erase(text.size() - dots.size());
  }
  std::vector<long> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      values.push_back(std::stol(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) node.fail("invalid integer \"" + item + "\"");
    } catch (const std::logic_error&) {
      node.fail("invalid integer \"" + item + "\"");
    }
  }
  if (values.empty()) node.fail("q is empty");
  if (periodic) return IntBandSystem::periodic(values, depth);
  IntBandSystem sys;
  for (long v : values) sys.q.emplace_back(v);
  return sys;
}

void run_example1(const ProblemDocument& doc, const Node& payload, Report& report) {
  const Level requested = doc.depth.value_or(20);
  IntBandSystem sys = parse_q(payload.has("q") ? payload.at("q") : Node(json("1,0,..."), "/payload/q"), requested);
  const Level depth = std::min<Level>(requested, sys.depth());
  json q = json::array();
  for (Level k = 0; k < depth; ++k) q.push_back(sys.q[k].get_str());
  json levels = json::array();
  std::ostringstream os;
  os << std::left << std::setw(7) << "level" << std::setw(10) << "Z-level" << std::setw(24) << "min |p_1|" << "ratio to 2^i/3\n";
  bool all_solvable = true;
  for (Level i = 1; i <= depth; ++i) {
    IntBandWitness w = example1_per_level_solvable(sys, i);
    mpz_class a = example1_min_norm(sys, i);
    mpz_class pow2 = mpz_class(1) << static_cast<mp_bitcnt_t>(i);
    mpq_class third(pow2, 3);
    third.canonicalize();
    mpq_class ratio(a * 3, pow2);
    ratio.canonicalize();
    all_solvable = all_solvable && w.solvable && w.verified;
    levels.push_back({{"level", i},
                      {"solvable", w.solvable},
                      {"witness_verified", w.verified},
                      {"min_norm", a.get_str()},
                      {"two_pow_over_three", third.get_str()},
                      {"ratio", decimal_string(ratio, 6)}});
    os << std::setw(7) << i << std::setw(10) << (w.verified ? "ok" : "FAIL") << std::setw(24) << a.get_str() << decimal_string(ratio, 6) << "\n";
  }
  report.result["q"] = q;
  report.result["levels"] = levels;
  report.result["all_levels_solvable_over_z"] = all_solvable;

  const Field field = doc.field.kind() == Field::Kind::integer ? Field::rational() : doc.field;
  IntBandSystem prefix;
  prefix.q.assign(sys.q.begin(), sys.q.begin() + static_cast<std::ptrdiff_t>(depth));
  ClosureOptions options;
  if (doc.window) options.window = *doc.window;
  SolveResult field_result = example1_over_field(prefix, depth, field, options);
  json over_field{{"field", field.name()}, {"depth", depth}};
  if (const auto* cert = std::get_if<PreimageCertificate>(&field_result)) {
    over_field["verified"] = cert->verified();
    over_field["depth_conditional"] = cert->depth_conditional;
    over_field["v_top"] = to_json(cert->v.back());
    os << "over " << field.name() << ": certificate to depth " << depth << (cert->verified() ? " verified\n" : " FAILED\n");
  } else {
    const auto& f = std::get<SolveFailure>(field_result);
    over_field["verified"] = false;
    over_field["failure"] = {{"kind", to_string(f.kind)}, {"level", f.level}, {"message", f.message}};
    os << "over " << field.name() << ": " << f.message << "\n";
  }
  report.result["over_field"] = over_field;
  const bool ok = all_solvable && over_field["verified"].get<bool>();
  report.status = ok ? "ok" : "certificate_failed";
  report.exit_code = ok ? kOk : kNotSolvable;
  report.human = os.str();
}

void run_example2(const Node& payload, Report& report) {
  DensityProbe probe;
  auto exact = [](const Node& n, const char* fallback) {
    try {
      return parse_exact_decimal(n.value().is_null() ? std::string(fallback) : n.as_string());
    } catch (const AlgebraError& e) {
      n.fail(e.what());
    }
  };
  static const json null_value;
  auto opt = [&](const char* key) { return payload.has(key) ? payload.at(key) : Node(null_value, std::string("/payload/") + key); };
  probe.t = exact(opt("t"), "0.5");
  probe.eps = exact(opt("eps"), "1e-3");
  if (probe.eps <= 0) opt("eps").fail("eps must be positive");
  probe.bound = payload.has("bound") ? static_cast<long>(payload.at("bound").as_count()) : 1000;
  if (payload.has("bits")) probe.precision_bits = static_cast<unsigned>(payload.at("bits").as_count());
  const unsigned bits = example2_default_bits(probe);
  report.result["t"] = probe.t.get_str();
  report.result["eps"] = probe.eps.get_str();
  report.result["bound"] = probe.bound;
  report.result["bits"] = bits;
  auto hit = example2_approximate(probe);
  std::ostringstream os;
  if (!hit) {
    report.status = "not_found";
    report.exit_code = kNotSolvable;
    report.result["found"] = false;
    os << "no (m, n) with |m|, |n| <= " << probe.bound << " reaches eps\n";
    report.human = os.str();
    return;
  }
  DensityProbe doubled = probe;
  doubled.precision_bits = bits * 2;
  auto again = example2_approximate(doubled);
  const bool stable = again && again->m == hit->m && again->n == hit->n && again->residual.decision == Decision::accept;
  report.result["found"] = true;
  report.result["m"] = hit->m;
  report.result["n"] = hit->n;
  report.result["residual_lo"] = decimal_string(hit->residual.lo, 15);
  report.result["residual_hi"] = decimal_string(hit->residual.hi, 15);
  report.result["residual_bits"] = hit->residual.bits;
  report.result["scanned"] = hit->scanned;
  report.result["stable_under_doubling"] = stable;
  report.status = stable ? "ok" : "unstable";
  report.exit_code = stable ? kOk : kDepthInsufficient;
  os << "m = " << hit->m << ", n = " << hit->n << ": m*sqrt2 + n*sqrt3 - t in [" << decimal_string(hit->residual.lo, 15) << ", "
     << decimal_string(hit->residual.hi, 15) << "]\n"
     << "decision " << (stable ? "unchanged" : "CHANGED") << " at " << bits * 2 << " bits\n";
  report.human = os.str();
}

void run_counterexample(const ProblemDocument& doc, Report& report) {
  const Node payload(doc.payload, "/payload");
  const std::string which = payload.has("which") ? payload.at("which").as_string() : "example1";
  report.result["which"] = which;
  if (which == "example1") return run_example1(doc, payload, report);
  if (which == "example2") return run_example2(payload, report);
  payload.at("which").fail("expected example1 or example2");
}

PreimageCertificate parse_certificate(const Node& node, Field field) {
  PreimageCertificate cert;
  const Node v = node.at("v");
  const Node lifts = node.at("lifts");
  const Node ell = node.at("ell");
  if (lifts.size() != v.size() || ell.size() != v.size()) node.fail("v, lifts and ell must have the same length");
  for (std::size_t k = 0; k < v.size(); ++k) {
    cert.v.push_back(parse_vector(v.at(k), field));
    cert.lifts.push_back(parse_vector(lifts.at(k), field));
    cert.ell.push_back(ell.at(k).as_count());
  }
  if (node.has("depth_conditional")) cert.depth_conditional = node.at("depth_conditional").as_bool();
  return cert;
}

void run_verify(const ProblemDocument& doc, Report& report) {
  const Node payload(doc.payload, "/payload");
  ProblemDocument inner = parse_problem(payload.at("problem").value());
  const Node cert_node = payload.has("certificate") ? payload.at("certificate") : payload.at("result").at("certificate");
  PreimageCertificate cert = parse_certificate(cert_node, inner.field);
  TowerMap map;
  std::vector<Vector> w;
  if (inner.command == "solve") {
    SolveFixture fx = build_solve(inner);
    map = fx.map;
    w = std::move(fx.w);
  } else if (inner.command == "cohom") {
    CohomFixture fx = build_cohom(inner);
    if (fx.mode != "solve") payload.at("problem").fail("only cohom solve documents carry certificates");
    map = fx.complex.relabeled_coboundary(fx.degree);
    for (Level j = 1; j <= fx.cochain->radius; ++j) w.push_back(fx.complex.restrict(*fx.cochain, j).values);
  } else {
    payload.at("problem").fail("expected a solve or cohom problem");
  }
  for (std::size_t k = 0; k < cert.v.size(); ++k) {
    const Level l = cert.ell[k];
    if (l == 0 || l > w.size()) cert_node.at("ell").fail("level out of range");
    if (cert.v[k].size() != map.source()->dim(k + 1) || cert.lifts[k].size() != map.source()->dim(l)) {
      cert_node.fail("vector lengths do not match the source levels");
    }
  }
  CertificateChecks checks = verify_certificate(map, w, cert);
  report.result["checks"] = checks_json(checks);
  report.result["depth"] = cert.v.size();
  report.result["verified"] = checks.all();
  report.status = checks.all() ? "verified" : "rejected";
  report.exit_code = checks.all() ? kOk : kNotSolvable;
  report.human = checks.all() ? "certificate verified at " + std::to_string(cert.v.size()) + " levels\n" : "certificate rejected\n";
}

}  // namespace

Report run(const ProblemDocument& doc) {
  Report report;
  report.command = doc.command;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (doc.command == "solve") run_solve(doc, report);
    else if (doc.command == "cohom") run_cohom(doc, report);
    else if (doc.command == "counterexample") run_counterexample(doc, report);
    else if (doc.command == "verify") run_verify(doc, report);
    else throw InputError("/command", "unknown command \"" + doc.command + "\"");
  } catch (const InputError& e) {
    report = input_error_report(doc.command, e.message(), e.path());
  } catch (const AlgebraError& e) {
    report = input_error_report(doc.command, e.what(), "/payload");
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace autoclose::cli
