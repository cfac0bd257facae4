#pragma once

// Golden data for the eight worked knots: Goeritz matrices, printed
// correction-term lists and the expected verdicts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unknot/goeritz.hpp"
#include "unknot/int_matrix.hpp"
#include "unknot/obstruction.hpp"
#include "unknot/quadforms.hpp"

namespace unknot::fixtures {

struct CandidateGolden {
  Rank2Triple triple;
  std::optional<IntMatrix> printed_lift;
  std::vector<std::string> printed_values;  // in the printed order, may be empty
  std::optional<std::string> min_nonzero;
  std::optional<std::string> decisive_value;
};

struct SplitVerdict {
  CrossingSplit split;
  Verdict verdict;
};

struct Fixture {
  std::string name;
  std::string source;
  std::string note;
  KnotProblem problem;
  std::vector<std::int64_t> factors;
  std::optional<std::string> spin_value;
  std::optional<std::string> min_nonzero;
  std::vector<std::string> printed_values;
  std::vector<Rank2Triple> enumerated;  // every rank-2 triple for the split, when printed
  std::vector<Rank2Triple> surviving;   // triples presenting the right group
  std::vector<CandidateGolden> candidates;
  std::vector<IntMatrix> rank3_classes;  // reduced representatives of every GL(3,Z)-class
  std::vector<IntMatrix> rank3_survivors;
  std::optional<IntMatrix> reduction_input;  // Q whose lift is shown in reduced form
  std::optional<IntMatrix> reduction_output;
  std::optional<std::int64_t> reduced_box, unreduced_box;
  std::vector<SplitVerdict> verdicts;
  std::optional<std::string> conclusion_contains;
};

inline KnotProblem problem(std::string name, IntMatrix g, std::int64_t det, std::int64_t sigma, CrossingSplit split,
                           std::int64_t upper) {
  return {std::move(name), det, sigma, std::move(g), split, upper};
}

inline Fixture knot_9_10() {
  Fixture f;
  f.name = "9_10";
  f.source = "worked example for 9_10 = S(33,23): Goeritz matrix, list A, lists B1 and B2";
  f.problem = problem("9_10", {{4, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {0, 0, -1, 4}}, 33, 4, {0, 2}, 3);
  f.factors = {33};
  f.spin_value = "-1";
  f.printed_values = {"-1",    "-23/33", "7/33",  "-3/11", "-5/33",  "19/33", "-1/11", "-5/33", "13/33",
                      "-5/11", "-23/33", "-1/3",  "7/11",  "7/33",   "13/33", "13/11", "19/33", "19/33",
                      "13/11", "13/33",  "7/33",  "7/11",  "-1/3",   "-23/33", "-5/11", "13/33", "-5/33",
                      "-1/11", "19/33",  "-5/33", "-3/11", "7/33",   "-23/33"};
  f.enumerated = {{2, 0, 6}, {4, 2, 4}};
  f.surviving = f.enumerated;
  f.candidates.push_back({{2, 0, 6},
                          IntMatrix{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 6, 1}, {0, 0, 1, 2}},
                          {"-1",   "-5/33", "13/33", "7/11",  "19/33", "7/33",  "-5/11", "19/33", "43/33",
                           "-3/11", "-5/33", "-1/3", "-9/11", "13/33", "43/33", "-1/11", "7/33",  "7/33",
                           "-1/11", "43/33", "13/33", "-9/11", "-1/3", "-5/33", "-3/11", "43/33", "19/33",
                           "-5/11", "7/33",  "19/33", "7/11",  "13/33", "-5/33"},
                          "-9/11",
                          "-9/11"});
  f.candidates.push_back({{4, 2, 4},
                          IntMatrix{{4, 1, 2, 0}, {1, 2, 0, 0}, {2, 0, 4, 1}, {0, 0, 1, 2}},
                          {"-1",    "-19/33", "23/33", "9/11",  "-7/33",  "-13/33", "3/11",   "-7/33", "5/33",
                           "-7/11", "-19/33", "1/3",   "1/11",  "23/33",  "5/33",   "5/11",   "-13/33", "-13/33",
                           "5/11",  "5/33",   "23/33", "1/11",  "1/3",    "-19/33", "-7/11",  "5/33",  "-7/33",
                           "3/11",  "-13/33", "-7/33", "9/11",  "23/33",  "-19/33"},
                          "-7/11",
                          "-7/11"});
  f.verdicts = {{{0, 2}, Verdict::obstructed}};
  f.conclusion_contains = "u = 3";
  return f;
}

/// A signature-four knot from the printed data table: cyclic group, split (0,2).
inline Fixture table_knot(std::string name, IntMatrix g, std::int64_t det, std::string min_g,
                          std::vector<std::pair<Rank2Triple, std::string>> rows) {
  Fixture f;
  f.name = name;
  f.source = "printed data table for the signature-four alternating knots (" + name + ")";
  f.problem = problem(name, std::move(g), det, 4, {0, 2}, 3);
  f.factors = {det};
  f.min_nonzero = std::move(min_g);
  for (auto& [t, m] : rows) {
    f.surviving.push_back(t);
    f.candidates.push_back({t, std::nullopt, {}, m, m});
  }
  f.verdicts = {{{0, 2}, Verdict::obstructed}};
  f.conclusion_contains = "u = 3";
  return f;
}

inline Fixture knot_9_35() {
  Fixture f;
  f.name = "9_35";
  f.source = "worked example for the Montesinos knot 9_35: array A over Z/3+Z/9 and the lifted form";
  f.note = "(0,2) has n != signature/2; Traczyk's sign result excludes it externally";
  f.problem = problem("9_35", {{6, -3}, {-3, 6}}, 27, 2, {1, 1}, 3);
  f.factors = {3, 9};
  f.spin_value = "-1/2";
  f.printed_values = {"-1/2", "19/18", "-5/18", "3/2",   "7/18",  "7/18",  "3/2",  "-5/18", "19/18",
                      "1/6",  "-5/18", "7/18",  "1/6",   "19/18", "19/18", "1/6",  "7/18",  "-5/18",
                      "1/6",  "-5/18", "7/18",  "1/6",   "19/18", "19/18", "1/6",  "7/18",  "-5/18"};
  f.enumerated = {{1, 0, 14}, {2, 0, 5}, {4, 3, 5}};
  f.surviving = {{2, 0, 5}};
  CandidateGolden c{{2, 0, 5}, IntMatrix{{2, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 5, 1}, {0, 0, 1, 2}}, {}, "-17/18",
                    std::nullopt};
  f.candidates.push_back(std::move(c));
  f.verdicts = {{{1, 1}, Verdict::obstructed}, {{0, 2}, Verdict::inapplicable}};
  f.conclusion_contains = "u(9_35) = 3";
  return f;
}

inline Fixture knot_11a365() {
  Fixture f;
  f.name = "11a365";
  f.source = "worked example for the two-bridge knot 11a365 = S(51,35): four rank-3 survivors";
  f.note = "no Goeritz matrix is printed; two_bridge_goeritz(51,16) is the positive-signature mirror S(51,-35)";
  f.problem = problem("11a365", two_bridge_goeritz(51, 16), 51, 6, {0, 3}, 4);
  f.factors = {51};
  f.rank3_classes = {IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 51}}, IntMatrix{{1, 0, 0}, {0, 2, 1}, {0, 1, 26}},
                     IntMatrix{{1, 0, 0}, {0, 3, 0}, {0, 0, 17}}, IntMatrix{{1, 0, 0}, {0, 4, 1}, {0, 1, 13}},
                     IntMatrix{{1, 0, 0}, {0, 5, 2}, {0, 2, 11}}, IntMatrix{{1, 0, 0}, {0, 6, 3}, {0, 3, 10}},
                     IntMatrix{{2, 0, 1}, {0, 3, 0}, {1, 0, 9}},  IntMatrix{{2, 1, 0}, {1, 2, 0}, {0, 0, 17}},
                     IntMatrix{{3, 0, 1}, {0, 3, 0}, {1, 0, 6}},  IntMatrix{{3, 1, 1}, {1, 4, 0}, {1, 0, 5}},
                     IntMatrix{{4, 1, 2}, {1, 4, 2}, {2, 2, 5}}};
  f.rank3_survivors = {IntMatrix{{3, 2, 0}, {2, 27, 26}, {0, 26, 27}},
                       IntMatrix{{11, 4, -6}, {4, 7, 4}, {-6, 4, 11}},
                       IntMatrix{{19, 18, 18}, {18, 19, 16}, {18, 16, 19}},
                       IntMatrix{{3, 0, -2}, {0, 3, 0}, {-2, 0, 7}}};
  f.reduction_input = IntMatrix{{19, 18, 18}, {18, 19, 16}, {18, 16, 19}};
  f.reduction_output = IntMatrix{{10, 1, -1, 0, -1, 0}, {1, 2, -1, 0, -1, 0}, {-1, -1, 2, 1, 0, 0},
                                 {0, 0, 1, 2, 0, 0},    {-1, -1, 0, 0, 2, 1}, {0, 0, 0, 0, 1, 2}};
  f.reduced_box = 320;
  f.unreduced_box = 8000;
  f.verdicts = {{{0, 3}, Verdict::obstructed}};
  f.conclusion_contains = "u = 4";
  return f;
}

inline std::vector<Fixture> all() {
  std::vector<Fixture> out;
  out.push_back(knot_9_10());
  out.push_back(table_knot("9_13", {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 4, -1}, {0, 0, -1, 4}}, 37, "-27/37",
                           {{{10, 9, 10}, "-33/37"}}));
  out.push_back(knot_9_35());
  out.push_back(table_knot("9_38", {{4, -1, -1, 0}, {-1, 4, -2, 0}, {-1, -2, 4, -1}, {0, 0, -1, 2}}, 57, "-37/57",
                           {{{2, 0, 10}, "-51/57"}, {{6, 4, 6}, "-45/57"}}));
  out.push_back(table_knot("10_53", {{4, -1, 0, 0}, {-1, 4, -1, -1}, {0, -1, 4, -1}, {0, -1, -1, 2}}, 73, "-53/73",
                           {{{4, 1, 6}, "-59/73"}}));
  out.push_back(table_knot("10_101", {{2, -1, 0, 0}, {-1, 4, -1, -1}, {0, -1, 4, -1}, {0, -1, -1, 4}}, 85,
                           "-59/85", {{{6, 3, 6}, "-65/85"}, {{22, 21, 22}, "-81/85"}}));
  out.push_back(table_knot("10_120", {{4, -2, 0, -1}, {-2, 4, -1, 0}, {0, -1, 4, -2}, {-1, 0, -2, 4}}, 105,
                           "-69/105",
                           {{{2, 0, 18}, "-99/105"},
                            {{4, 0, 8}, "-91/105"},
                            {{6, 2, 6}, "-83/105"},
                            {{10, 8, 10}, "-93/105"}}));
  out.push_back(knot_11a365());
  return out;
}

inline std::vector<std::string> names() {
  return {"9_10", "9_13", "9_35", "9_38", "10_53", "10_101", "10_120", "11a365"};
}

inline std::optional<Fixture> find(const std::string& name) {
  for (auto& f : all())
    if (f.name == name) return f;
  return std::nullopt;
}

}  // namespace unknot::fixtures
