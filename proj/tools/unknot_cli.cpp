// unknot: correction terms, candidate enumeration and the unknotting obstruction.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unknot/corrections.hpp"
#include "unknot/enumeration.hpp"
#include "unknot/errors.hpp"
#include "unknot/fixtures.hpp"
#include "unknot/goeritz.hpp"
#include "unknot/json_io.hpp"
#include "unknot/obstruction.hpp"
#include "unknot/reproduce.hpp"

namespace {

using unknot::json;

enum Exit : int {
  ok = 0,
  mismatch = 1,
  bad_input = 2,
  indefinite = 3,
  obstructed = 10,
  not_obstructed = 11,
  inapplicable = 12,
};

struct Globals {
  bool json_mode = true;
  unsigned jobs = 0;
  bool slow_verify = false;
};

// Accepts inline JSON or a path to a JSON file.
json load_json(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{')) {
    std::ifstream in(arg);
    if (!in) throw unknot::parse_error("cannot open " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw unknot::parse_error(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const Globals& g, const json& j, const std::string& human) {
  if (g.json_mode)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

std::string factors_string(const std::vector<std::int64_t>& f) {
  if (f.empty()) return "trivial";
  std::string s;
  for (auto d : f) s += (s.empty() ? "Z/" : " + Z/") + std::to_string(d);
  return s;
}

int cmd_mq(const Globals& g, const std::string& input) {
  const unknot::IntMatrix q = unknot::matrix_from_json(load_json(input));
  if (!q.square() || q.rows() == 0) throw unknot::dimension_error("matrix must be square and non-empty");
  if (!q.symmetric()) throw unknot::not_symmetric_error("matrix is not symmetric");
  if (!unknot::is_positive_definite(q)) {
    std::cerr << "error: matrix is not positive-definite\n";
    return indefinite;
  }
  const auto rt = unknot::reduced_correction_table(q, {g.jobs, true});
  const auto& t = rt.table;
  json j;
  j["form"] = unknot::to_json(q);
  j["determinant"] = unknot::to_json(unknot::det_exact(q));
  j["reduction"] = json{{"form", unknot::to_json(rt.reduction.form)},
                        {"transform", unknot::to_json(rt.reduction.transform)},
                        {"box_size", unknot::to_json(unknot::characteristic_box(rt.reduction.form).size())}};
  j["invariant_factors"] = unknot::to_json(t.group.invariant_factors());
  j["spin_value"] = t.spin_value().str();
  j["table"] = unknot::to_json(t)["values"];
  if (auto m = t.min_nonzero()) j["min_nonzero"] = m->str();

  std::ostringstream h;
  h << "form " << q << "\n";
  h << "reduced basis " << rt.reduction.form << " (box " << unknot::characteristic_box(rt.reduction.form).size()
    << " covectors)\n";
  h << "group " << factors_string(t.group.invariant_factors()) << "\n";
  h << "spin value " << t.spin_value() << "\n";
  if (auto m = t.min_nonzero()) h << "min over g != 0: " << *m << "\n";
  for (std::size_t e = 0; e < t.values.size(); ++e)
    h << "  " << t.group.label_string(static_cast<std::int64_t>(e)) << "  " << t.values[e] << "\n";
  emit(g, j, h.str());
  return ok;
}

std::vector<std::int64_t> parse_group(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw unknot::parse_error("bad group factor: " + item);
    }
  }
  return out;
}

int cmd_enumerate(const Globals& g, std::size_t rank, std::int64_t det, std::size_t neg, const std::string& group,
                  bool dedupe) {
  if (det <= 0 || det % 2 == 0) throw unknot::invalid_parameters_error("determinant must be odd and positive");
  std::vector<unknot::IntMatrix> forms;
  if (rank == 2) {
    for (const auto& t : unknot::enumerate_rank2(det, static_cast<std::int64_t>(neg))) forms.push_back(t.form());
  } else {
    forms = unknot::enumerate_rank_r_superset(rank, det, neg, {dedupe, g.jobs});
  }
  if (!group.empty()) forms = unknot::filter_by_group(forms, unknot::AbelianGroup(parse_group(group)));

  json list = json::array();
  std::ostringstream h;
  if (unknot::rank_is_experimental(rank)) h << "rank " << rank << " is experimental\n";
  for (const auto& q : forms) {
    list.push_back(unknot::candidate_json(q));
    if (rank == 2) {
      const auto t = unknot::triple_of(q);
      h << "(" << t.m1 << "," << t.a << "," << t.m2 << ")\n";
    } else {
      h << q << "\n";
    }
  }
  json j;
  j["rank"] = rank;
  j["determinant"] = det;
  j["neg_count"] = neg;
  if (unknot::rank_is_experimental(rank)) j["experimental"] = true;
  j["candidates"] = std::move(list);
  emit(g, j, h.str());
  return ok;
}

int verdict_exit(unknot::Verdict v) {
  switch (v) {
    case unknot::Verdict::obstructed: return obstructed;
    case unknot::Verdict::not_obstructed: return not_obstructed;
    case unknot::Verdict::inapplicable: return inapplicable;
  }
  return mismatch;
}

int cmd_obstruct(const Globals& g, const std::string& input, const std::string& split) {
  unknot::KnotProblem kp = unknot::problem_from_json(load_json(input));
  if (!split.empty()) {
    const auto s = parse_group(split);
    if (s.size() != 2) throw unknot::parse_error("--split expects p,n");
    kp.split = {s[0], s[1]};
  }
  const auto validation = unknot::validate_problem(kp);
  if (!validation.ok()) {
    std::cerr << "error: invalid problem:";
    for (const auto& f : validation.failures) std::cerr << " " << f.check;
    std::cerr << "\n";
    for (const auto& f : validation.failures) std::cerr << "  " << f.check << ": " << f.detail << "\n";
    return bad_input;
  }
  const auto report = unknot::run_obstruction(kp, {g.jobs, g.slow_verify});

  std::ostringstream h;
  h << report.knot << " (p,n) = (" << report.split.positive << "," << report.split.negative
    << "): " << unknot::verdict_name(report.verdict) << "\n";
  for (const auto& c : report.applicability)
    h << "  [" << (c.passed ? "ok" : "failed") << "] " << c.name << ": " << c.detail << "\n";
  if (report.target_spin_value)
    h << "  target " << factors_string(report.target_factors) << ", spin value " << *report.target_spin_value
      << ", min over g != 0 " << (report.target_min_nonzero ? report.target_min_nonzero->str() : "none") << "\n";
  for (const auto& c : report.candidates) {
    h << "  candidate " << c.form;
    if (c.triple) h << " (" << c.triple->m1 << "," << c.triple->a << "," << c.triple->m2 << ")";
    h << ": " << unknot::stage_name(c.certificate.stage);
    if (c.certificate.decisive_value) h << " at " << *c.certificate.decisive_value;
    h << "\n";
  }
  for (const auto& n : report.external_notes) h << "  note: " << n << "\n";
  if (report.conclusion) h << *report.conclusion << "\n";
  emit(g, unknot::to_json(report), h.str());
  return verdict_exit(report.verdict);
}

int cmd_white_graph(const Globals& g, const std::string& input) {
  const auto graph = unknot::white_graph_from_json(load_json(input));
  const auto m = unknot::goeritz_from_white_graph(graph);
  json j{{"goeritz", unknot::to_json(m)}, {"determinant", unknot::to_json(unknot::det_exact(m))}};
  std::ostringstream h;
  h << m << "\ndet " << unknot::det_exact(m) << "\n";
  emit(g, j, h.str());
  return ok;
}

int cmd_two_bridge(const Globals& g, std::int64_t p, std::int64_t q) {
  const auto m = unknot::two_bridge_goeritz(p, q);
  const auto v = unknot::normalize_two_bridge(p, q);
  json variants{{"q", unknot::to_json(v.q)},
                {"q_inverse", unknot::to_json(v.q_inverse)},
                {"mirror", unknot::to_json(v.mirror)},
                {"mirror_inverse", unknot::to_json(v.mirror_inverse)}};
  json j{{"goeritz", unknot::to_json(m)}, {"determinant", unknot::to_json(unknot::det_exact(m))},
         {"variants", variants}};
  std::ostringstream h;
  h << m << "\ndet " << unknot::det_exact(m) << "\nsame knot: q = " << v.q << ", " << v.q_inverse
    << "; mirror: q = " << v.mirror << ", " << v.mirror_inverse << "\n";
  emit(g, j, h.str());
  return ok;
}

int cmd_reproduce(const Globals& g, const std::string& name) {
  std::vector<unknot::fixtures::Fixture> chosen;
  if (name == "all") {
    chosen = unknot::fixtures::all();
  } else if (auto f = unknot::fixtures::find(name)) {
    chosen.push_back(*f);
  } else {
    std::cerr << "error: unknown fixture " << name << "; known:";
    for (const auto& n : unknot::fixtures::names()) std::cerr << " " << n;
    std::cerr << " all\n";
    return bad_input;
  }
  json list = json::array();
  std::ostringstream h;
  bool pass = true;
  for (const auto& f : chosen) {
    const auto r = unknot::reproduce_fixture(f, g.jobs, g.slow_verify);
    pass = pass && r.pass();
    list.push_back(unknot::to_json(r));
    h << (r.pass() ? "PASS " : "FAIL ") << r.knot << "\n";
    for (const auto& c : r.checks) {
      h << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.actual;
      if (!c.pass) h << " (expected " << c.expected << ")";
      h << "\n";
    }
  }
  json j{{"pass", pass}, {"fixtures", std::move(list)}};
  emit(g, j, h.str());
  return pass ? ok : mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correction terms and unknotting-number obstructions from Goeritz matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  bool human = false;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "machine-readable JSON output (default)");
  app.add_flag("--human", human, "human-readable output");
  app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--slow-verify", g.slow_verify, "confirm every cheap refutation with a full isomorphism scan");

  std::string mq_input;
  auto* mq = app.add_subcommand("mq", "correction table of a positive-definite form");
  mq->add_option("matrix", mq_input, "matrix as inline JSON or a JSON file")->required();

  std::size_t rank = 2, neg = 0;
  std::int64_t det = 0;
  std::string group;
  bool dedupe = false;
  auto* en = app.add_subcommand("enumerate", "candidate forms Q = I mod 2 of given rank, determinant and census");
  en->add_option("--rank", rank, "rank r")->required()->check(CLI::PositiveNumber);
  en->add_option("--det", det, "determinant (odd)")->required();
  en->add_option("--neg", neg, "number of diagonal entries = 3 mod 4")->required();
  en->add_option("--group", group, "keep forms presenting Z/f1 + Z/f2 + ...");
  en->add_flag("--dedupe", dedupe, "drop forms whose lifted correction multiset repeats");

  std::string problem_input, split;
  auto* ob = app.add_subcommand("obstruct", "run the obstruction on a knot problem");
  ob->add_option("problem", problem_input, "problem JSON file or inline JSON")->required();
  ob->add_option("--split", split, "override the crossing split as p,n");

  auto* gz = app.add_subcommand("goeritz", "build Goeritz matrices");
  gz->require_subcommand(1);
  std::string graph_input;
  auto* wg = gz->add_subcommand("white-graph", "Goeritz matrix of a white graph");
  wg->add_option("graph", graph_input, "white graph JSON file or inline JSON")->required();
  std::int64_t bp = 0, bq = 0;
  auto* tb = gz->add_subcommand("two-bridge", "Goeritz matrix of the two-bridge knot S(p,q)");
  tb->add_option("--p", bp, "p (odd)")->required();
  tb->add_option("--q", bq, "q, coprime to p")->required();

  std::string fixture = "all";
  auto* rp = app.add_subcommand("reproduce", "recompute the golden values of a worked knot");
  rp->add_option("name", fixture, "9_10, 9_13, 9_35, 9_38, 10_53, 10_101, 10_120, 11a365 or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bad_input;
  }
  g.json_mode = !human;

  try {
    if (*mq) return cmd_mq(g, mq_input);
    if (*en) return cmd_enumerate(g, rank, det, neg, group, dedupe);
    if (*ob) return cmd_obstruct(g, problem_input, split);
    if (*wg) return cmd_white_graph(g, graph_input);
    if (*tb) return cmd_two_bridge(g, bp, bq);
    if (*rp) return cmd_reproduce(g, fixture);
  } catch (const unknot::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }
  return bad_input;
}
