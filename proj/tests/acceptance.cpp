// Acceptance suite: one line per criterion, exact tolerances, nonzero exit on
// any failure. Usage: acceptance <fixtures-dir> [<cli-path>]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "sigfix/construction.hpp"
#include "sigfix/io.hpp"
#include "sigfix/search.hpp"

using namespace sigfix;

namespace {

std::string g_fixtures;
std::string g_cli;
bool g_all_ok = true;

void criterion(int n, const std::string& what, long long budget_ms,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        ok = false;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    if (ok && budget_ms > 0 && ms > budget_ms) {
        ok = false;
        detail += " [exceeded " + std::to_string(budget_ms) + " ms budget]";
    }
    std::printf("[%s] criterion %2d: %s (%lld ms)%s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
                static_cast<long long>(ms), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    g_all_ok = g_all_ok && ok;
}

std::string fixture(const std::string& name) { return g_fixtures + "/" + name; }

IntSymMatrix load_matrix(const std::string& name) {
    return io::intsym_from_string(io::read_file(fixture(name)));
}

GroupRingMatrix paper_groupring() {
    return io::groupring_matrix_from_string(io::read_file(fixture("paper_groupring.json")));
}

int run_cli(const std::string& args, const std::string& out_path) {
    std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + out_path + "\" 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <fixtures-dir> [<cli-path>]\n";
        return 2;
    }
    g_fixtures = argv[1];
    if (argc > 2) g_cli = argv[2];

    criterion(1, "cyclotomic kernel: root products and the inverse formula", 10000,
              [](std::string& detail) {
                  for (int m = 3; m <= 27; m += 2) {
                      Cyclotomic one = Cyclotomic::from_int(m, 1);
                      Cyclotomic prod = one;
                      for (int i = 1; i < m; ++i) prod *= (one - Cyclotomic::root_power(m, i));
                      if (!(prod == Cyclotomic::from_int(m, m))) {
                          detail = "product identity failed at m=" + std::to_string(m);
                          return false;
                      }
                  }
                  for (int m = 3; m <= 15; m += 2) {
                      Cyclotomic one = Cyclotomic::from_int(m, 1);
                      for (int a = 1; a < m; ++a) {
                          Cyclotomic x = Cyclotomic::root_power(m, a) - one;
                          Cyclotomic formula = one;
                          for (int i = 1; i < m; ++i) {
                              if (i == a) continue;
                              formula *= (one - Cyclotomic::root_power(m, i));
                          }
                          if (!(x.inverse() == Rat(-1, m) * formula)) {
                              detail = "inverse formula failed at m=" + std::to_string(m) +
                                       ", a=" + std::to_string(a);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(2, "defect identities: projective triple and sphere forms, odd m <= 27", 30000,
              [](std::string& detail) {
                  for (int m = 3; m <= 27; m += 2) {
                      detail::DefectCache cache;
                      Cyclotomic one = Cyclotomic::from_int(m, 1);
                      for (int a = 1; a < m; ++a) {
                          for (int b = 1; b < m; ++b) {
                              if (a == b || std::gcd(std::gcd(a, b), m) != 1) continue;
                              Cyclotomic sum = cache.term(m, a, b) +
                                               cache.term(m, mod_norm(a - b, m), m - b) +
                                               cache.term(m, mod_norm(b - a, m), m - a);
                              if (!(sum == one)) {
                                  detail = "triple failed at m=" + std::to_string(m);
                                  return false;
                              }
                          }
                          if (!(cache.term(m, a, a) + surface_term(m, 1, a) == one)) {
                              detail = "sphere identity failed at m=" + std::to_string(m);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(3, "exhaustive triple check at m=9 with raw count 36^3", 120000,
              [](std::string& detail) {
                  auto rep = verify_theorem_391();
                  if (rep.raw_ordered_triples != 46656ull) {
                      detail = "raw count " + std::to_string(rep.raw_ordered_triples);
                      return false;
                  }
                  detail = "solutions=" + std::to_string(rep.solutions_found) +
                           " raw=" + std::to_string(rep.raw_ordered_triples);
                  return rep.pass && rep.solutions_found > 0;
              });

    criterion(4, "eight-term dataset: sum 6 at s=1 and 2 at s=3", 10000, [](std::string& detail) {
        DefectDataset ds = io::dataset_from_string(io::read_file(fixture("example394.json")));
        bool ok1 = defect_sum(ds, 1) == Cyclotomic::from_int(9, 6);
        bool ok3 = defect_sum(ds, 3) == Cyclotomic::from_int(3, 2);
        if (!ok1) detail = "s=1 sum wrong";
        if (!ok3) detail += " s=3 sum wrong";
        return ok1 && ok3;
    });

    criterion(5, "no-solution lemma, cancellation, and the k=p equation scans", 300000,
              [](std::string& detail) {
                  for (int m = 3; m <= 27; m += 2) {
                      auto rep = check_lemma_no_solution(m);
                      if (!rep.pass) {
                          detail = "lemma violated at m=" + std::to_string(m);
                          return false;
                      }
                  }
                  for (int m : {9, 25, 27}) {
                      auto rep = check_cancellation_theorem(m);
                      if (!rep.pass) {
                          detail = "cancellation violated at m=" + std::to_string(m);
                          return false;
                      }
                  }
                  for (int m : {9, 25}) {
                      auto rep = check_theorem_two(m, 50);
                      if (!rep.matches_expected) {
                          detail = "unexpected solution set at m=" + std::to_string(m);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(6, "group ring: 2x2 determinant is 1 and the expansion matches entry-for-entry",
              60000, [](std::string& detail) {
                  GroupRingMatrix pm = paper_groupring();
                  if (!det_2x2(pm).is_one()) {
                      detail = "determinant not 1";
                      return false;
                  }
                  IntSymMatrix expanded = regular_expand(pm, 5);
                  IntSymMatrix reference = load_matrix("paper_10x10.txt");
                  if (!(expanded == reference)) {
                      detail = "expansion mismatch";
                      return false;
                  }
                  return true;
              });

    criterion(7, "lattice certification: 78-op reduction and the even-lattice contrast", 60000,
              [](std::string& detail) {
                  IntSymMatrix a = load_matrix("paper_10x10.txt");
                  if (determinant(a) != 1 || !is_positive_definite(a)) {
                      detail = "published form not certified";
                      return false;
                  }
                  ReduceResult red = reduce_to_diagonal(a);
                  if (!(red.reduced == IntSymMatrix::identity(10)) || red.op_count != 78) {
                      detail = "reduction ops=" + std::to_string(red.op_count);
                      return false;
                  }
                  if (!(congruence(a, red.transform) == red.reduced)) {
                      detail = "transform audit failed";
                      return false;
                  }
                  if (!norm_one_split(a).transform) {
                      detail = "norm-1 split failed on the published form";
                      return false;
                  }
                  IntSymMatrix e8 = load_matrix("e8_plus_2x1.txt");
                  if (determinant(e8) != 1 || !is_positive_definite(e8)) {
                      detail = "even fixture not unimodular positive definite";
                      return false;
                  }
                  NormOneSplit split = norm_one_split(e8);
                  if (split.transform || split.vectors.size() != 2) {
                      detail = "even fixture unexpectedly standard";
                      return false;
                  }
                  return true;
              });

    criterion(8, "order-25 action data passes all 24 powers with the stated traces", 60000,
              [](std::string& detail) {
                  ActionData data = io::action_from_string(io::read_file(fixture("c25_action.json")));
                  VerifyActionReport rep = verify_action_data(data);
                  if (!rep.pass || rep.powers.size() != 24) {
                      detail = "verification failed";
                      return false;
                  }
                  const PowerCheck& k1 = rep.powers[0];
                  const PowerCheck& k5 = rep.powers[4];
                  if (k1.trace != 0 || k5.trace != 10) {
                      detail = "trace values wrong";
                      return false;
                  }
                  if (k1.euler.chi_fixed != 2 || k5.euler.chi_fixed != 12) {
                      detail = "euler characteristics wrong";
                      return false;
                  }
                  Cyclotomic s1 = g_signature(data, 1);
                  Cyclotomic s5 = g_signature(data, 5);
                  if (!s1.is_zero() || !(s5 == Cyclotomic::from_int(5, 10))) {
                      detail = "defect sums wrong";
                      return false;
                  }
                  return true;
              });

    criterion(9, "defect search: order 5 pair-set is unique, order 3 and single-orbit empty",
              60000, [](std::string& detail) {
                  auto r52 = search_defect_solution(5, 2);
                  std::vector<std::pair<int, int>> want = {{1, 4}, {2, 3}};
                  if (r52.solutions.size() != 1 || r52.solutions[0] != want) {
                      detail = "order-5 solution set wrong";
                      return false;
                  }
                  for (int s = 1; s <= 3; ++s) {
                      if (!search_defect_solution(3, s).solutions.empty()) {
                          detail = "order-3 search not empty at s=" + std::to_string(s);
                          return false;
                      }
                  }
                  if (!search_defect_solution(5, 1).solutions.empty()) {
                      detail = "single-orbit search not empty";
                      return false;
                  }
                  return true;
              });

    criterion(10, "matrix search: stream holds the published tuple; emissions re-certify", 0,
              [](std::string& detail) {
                  io::LinkingSearchConfig cfg =
                      io::search_config_from_string(io::read_file(fixture("mod5_search.json")));
                  auto r = search_linking_matrix(cfg.constraints, cfg.m, cfg.q, cfg.prune, 4);
                  std::array<long long, 9> paper = {45, 16, 16, 93, 23, 23, 198, 29, 29};
                  bool has_paper = false;
                  for (const auto& cand : r.emitted) {
                      if (cand.params == paper) has_paper = true;
                      // independent re-certification of every emitted tuple
                      GroupRingMatrix gm =
                          detail::linking_matrix_from_params(cfg.m, cfg.q, cand.params);
                      if (!det_2x2(gm).is_one()) {
                          detail = "re-check: group-ring determinant not 1";
                          return false;
                      }
                      IntSymMatrix x = regular_expand(gm, cfg.q);
                      if (determinant(x) != 1 || !is_positive_definite(x)) {
                          detail = "re-check: integer certification failed";
                          return false;
                      }
                      bool standard = false;
                      try {
                          ReduceResult red = reduce_to_diagonal(x);
                          standard = (red.reduced == IntSymMatrix::identity(10));
                      } catch (const reduction_stall_error&) {
                          standard = false;
                      }
                      if (!standard) standard = norm_one_split(x).transform.has_value();
                      if (!standard) {
                          detail = "re-check: emitted tuple is not the standard form";
                          return false;
                      }
                  }
                  if (!has_paper) {
                      detail = "published tuple missing from the stream";
                      return false;
                  }
                  // differential no-pruning run on bounds a tenth of the size
                  io::LinkingSearchConfig small = io::search_config_from_string(
                      io::read_file(fixture("mod5_search_small.json")));
                  io::LinkingSearchConfig small_np = io::search_config_from_string(
                      io::read_file(fixture("mod5_search_small_noprune.json")));
                  auto rp = search_linking_matrix(small.constraints, small.m, small.q, true, 1);
                  auto rn =
                      search_linking_matrix(small_np.constraints, small_np.m, small_np.q, false, 1);
                  if (rp.enumerated != rn.enumerated || rp.emitted.size() != rn.emitted.size()) {
                      detail = "pruned and unpruned runs disagree";
                      return false;
                  }
                  for (size_t i = 0; i < rp.emitted.size(); ++i)
                      if (!(rp.emitted[i].params == rn.emitted[i].params)) {
                          detail = "pruned and unpruned emissions differ";
                          return false;
                      }
                  detail = "emitted=" + std::to_string(r.emitted.size()) +
                           " enumerated=" + std::to_string(r.enumerated);
                  return true;
              });

    criterion(11, "determinism: reports byte-identical across runs and thread counts", 0,
              [](std::string& detail) {
                  if (g_cli.empty()) {
                      detail = "cli path not supplied";
                      return false;
                  }
                  struct Cmd {
                      std::string name, args;
                  };
                  std::vector<Cmd> cmds = {
                      {"matrix", "search matrix --config " + fixture("mod5_search.json")},
                      {"v391", "verify-391"},
                      {"defect", "search defect --p 5 --s 2"},
                      {"lattice", "lattice check --file " + fixture("paper_10x10.txt")},
                  };
                  for (const Cmd& c : cmds) {
                      std::vector<std::string> outs;
                      for (const std::string& t : {std::string("1"), std::string("4")}) {
                          for (int run = 0; run < 2; ++run) {
                              std::string path = "/tmp/sigfix_det_" + c.name + "_" + t + "_" +
                                                 std::to_string(run) + ".json";
                              run_cli(c.args + " --threads " + t, path);
                              outs.push_back(io::read_file(path));
                              std::remove(path.c_str());
                          }
                      }
                      for (size_t i = 1; i < outs.size(); ++i) {
                          if (outs[i] != outs[0]) {
                              detail = "output of '" + c.name + "' varies across runs";
                              return false;
                          }
                      }
                      if (outs[0].empty()) {
                          detail = "no output captured for '" + c.name + "'";
                          return false;
                      }
                  }
                  return true;
              });

    return g_all_ok ? 0 : 1;
}
