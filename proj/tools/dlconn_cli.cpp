// Command-line driver: combinatorial criteria, point-count polynomials, and
// the brute-force flag-variety checks, reported as newline-delimited JSON.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dlconn/counting.hpp"
#include "dlconn/coxeter.hpp"
#include "dlconn/io.hpp"
#include "dlconn/twist.hpp"
#include "dlconn/verify.hpp"

using namespace dlconn;

namespace {

struct Output {
  bool tsv = false;
  bool strict = false;
  bool any_fail = false;
  bool any_inconclusive = false;

  void emit(const VerificationReport& r) {
    if (r.verdict == Verdict::Fail) any_fail = true;
    if (r.verdict == Verdict::Inconclusive) any_inconclusive = true;
    if (tsv)
      std::cout << report_to_tsv(r) << "\n";
    else
      std::cout << report_to_json(r).dump() << "\n";
  }

  void emit_plain(const ordered_json& j) {
    if (tsv) {
      std::string line;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!line.empty()) line.push_back('\t');
        line += it.key() + "=" +
                (it->is_string() ? it->get<std::string>() : it->dump());
      }
      std::cout << line << "\n";
    } else {
      std::cout << j.dump() << "\n";
    }
  }

  int exit_code() const {
    if (any_fail) return 1;
    if (strict && any_inconclusive) return 1;
    return 0;
  }
};

std::size_t flag_bound_from_env(std::size_t fallback) {
  if (const char* env = std::getenv("DLCONN_MAX_FLAGS")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed DLCONN_MAX_FLAGS\n";
    }
  }
  return fallback;
}

int default_m(const RealizationPtr& real) {
  return real->kind() == RealizationKind::Split ? 2 : 1;
}

constexpr int kEscalationCap = 6;

VerificationReport fibers_with_escalation(RealizationPtr real,
                                          const WeylElement& w_in, int m) {
  WeylElement w = w_in;
  VerificationReport rep = check_component_fibers(real, w, m);
  while (rep.verdict == Verdict::Inconclusive && m < kEscalationCap) {
    ++m;
    try {
      if (m > real->max_m()) {
        real = real->with_max_m(m);
        w = element_from_word(real->weyl_datum(), w.canonical_word());
      }
      rep = check_component_fibers(real, w, m);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BoundExceeded) {
        rep.witnesses.push_back(std::string("escalation stopped: ") + e.what());
        break;
      }
      throw;
    }
  }
  return rep;
}

std::vector<GeneratorSet> all_subsets(int rank, bool nonempty) {
  std::vector<GeneratorSet> out;
  for (int mask = nonempty ? 1 : 0; mask < (1 << rank); ++mask) {
    GeneratorSet s;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) s.insert(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Weyl group combinatorics, connectedness criteria for "
               "Deligne-Lusztig varieties, and a finite flag-variety oracle"};
  app.require_subcommand(1);

  Output out;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "newline-delimited JSON output (default)");
  app.add_flag("--tsv", out.tsv, "tab-separated output");
  app.add_flag("--strict", out.strict, "treat inconclusive verdicts as failures");
  std::size_t bound = flag_bound_from_env(1000000);
  app.add_option("--bound", bound, "enumeration bound for flags and groups");
  int max_m = 0;
  app.add_option("--max-m", max_m, "largest extension degree kept in the tower");

  std::string group_s, twist_s = "1", set_s, w_s, realization_s, check_s;
  int s_gen = -1, m_level = 0;
  unsigned long long q_val = 2;

  auto* criterion = app.add_subcommand(
      "criterion", "connectedness / irreducibility criterion for a set or element");
  criterion->add_option("--group", group_s, "group datum (type label or matrix)")
      ->required();
  criterion->add_option("--twist", twist_s, "diagram automorphism");
  criterion->add_option("--set", set_s, "generator indices, comma separated");
  criterion->add_option("--w", w_s, "element as dotted generator word");

  auto* count = app.add_subcommand("count", "point-count polynomials N and "
                                            "connected-component counts");
  count->add_option("--group", group_s, "group datum")->required();
  count->add_option("--twist", twist_s, "diagram automorphism");
  count->add_option("--set", set_s, "sigma-stable generator subset");
  count->add_option("--w", w_s, "element as dotted generator word");
  count->add_option("--q", q_val, "evaluation point (default 2)");

  auto* steinberg =
      app.add_subcommand("steinberg", "fixed-subgroup Coxeter structure check");
  steinberg->add_option("--group", group_s, "group datum")->required();
  steinberg->add_option("--twist", twist_s, "diagram automorphism");

  auto* verify = app.add_subcommand("verify", "flag-variety oracle checks");
  verify->add_option("--realization", realization_s, "e.g. GL3@q=2 or U4@q=2")
      ->required();
  verify->add_option("--check", check_s,
                     "comma list of: theorem,lemma,fibers,closure,x1,descent");
  verify->add_option("--set", set_s, "generator indices for theorem/descent");
  verify->add_option("--w", w_s, "element for fibers/closure");
  verify->add_option("--s", s_gen, "generator for lemma/x1");
  verify->add_option("--m", m_level, "extension level");

  auto* all = app.add_subcommand("all", "full oracle suite for a realization");
  all->add_option("--realization", realization_s, "e.g. GL3@q=2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (criterion->parsed()) {
      DatumPtr d = parse_datum(group_s);
      TwistedDatum t = TwistedDatum::make(d, parse_twist(d, twist_s));
      if (!set_s.empty() || w_s.empty()) {
        GeneratorSet I = parse_generator_set(set_s);
        ordered_json j;
        j["group"] = group_s;
        j["set"] = genset_to_string(I);
        j["closure"] = genset_to_string(sigma_closure(t, I));
        j["connected"] = is_connected_union(t, I);
        out.emit_plain(j);
      }
      if (!w_s.empty()) {
        WeylElement w = element_from_string(d, w_s);
        ordered_json j;
        j["group"] = group_s;
        j["w"] = element_to_string(w);
        j["support"] = genset_to_string(support(w));
        j["closure"] = genset_to_string(sigma_closure(t, support(w)));
        j["irreducible"] = is_irreducible(t, w);
        out.emit_plain(j);
      }
    } else if (count->parsed()) {
      DatumPtr d = parse_datum(group_s);
      TwistedDatum t = TwistedDatum::make(d, parse_twist(d, twist_s));
      IntPolynomial nw = count_N_full(t, bound);
      if (!w_s.empty()) {
        WeylElement w = element_from_string(d, w_s);
        GeneratorSet J = sigma_closure(t, support(w));
        IntPolynomial nj = count_N(t, J, bound);
        IntPolynomial cc = component_count(t, w, bound);
        ordered_json j;
        j["group"] = group_s;
        j["w"] = element_to_string(w);
        j["N_W"] = poly_to_json(nw);
        j["N_Ww"] = poly_to_json(nj);
        j["component_count"] = poly_to_json(cc);
        j["component_count_at_q"] = bigint_to_json(cc.evaluate(q_val));
        j["q"] = q_val;
        out.emit_plain(j);
      } else {
        GeneratorSet J = set_s.empty() ? full_generator_set(d)
                                       : parse_generator_set(set_s);
        IntPolynomial nj = count_N(t, J, bound);
        ordered_json j;
        j["group"] = group_s;
        j["set"] = genset_to_string(J);
        j["N"] = poly_to_json(nj);
        j["N_at_q"] = bigint_to_json(nj.evaluate(q_val));
        j["q"] = q_val;
        out.emit_plain(j);
      }
    } else if (steinberg->parsed()) {
      DatumPtr d = parse_datum(group_s);
      TwistedDatum t = TwistedDatum::make(d, parse_twist(d, twist_s));
      out.emit(verify_steinberg(t, bound));
    } else if (verify->parsed() || all->parsed()) {
      RealizationPtr real = parse_realization(realization_s, max_m, bound);
      const TwistedDatum& t = real->twisted();
      const int rank = real->weyl_datum()->rank();
      std::vector<std::string> checks;
      if (all->parsed()) {
        checks = {"theorem", "lemma", "fibers", "closure", "x1", "descent"};
      } else {
        std::string rest = check_s.empty() ? "theorem" : check_s;
        std::size_t pos = 0;
        while (pos <= rest.size()) {
          std::size_t comma = rest.find(',', pos);
          checks.push_back(rest.substr(
              pos, comma == std::string::npos ? comma : comma - pos));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      }
      const bool sweep = all->parsed();
      int m = m_level > 0 ? m_level : default_m(real);
      for (const std::string& c : checks) {
        if (c == "theorem") {
          if (sweep) {
            for (const auto& I : all_subsets(rank, true))
              out.emit(check_theorem_connectivity(real, I));
          } else {
            out.emit(check_theorem_connectivity(real, parse_generator_set(set_s)));
          }
        } else if (c == "lemma") {
          if (s_gen >= 0 && !sweep) {
            out.emit(check_lemma_cell_emptiness(real, s_gen, m));
          } else {
            for (int s = 0; s < rank; ++s)
              out.emit(check_lemma_cell_emptiness(real, s, m));
          }
        } else if (c == "fibers") {
          if (!w_s.empty() && !sweep) {
            WeylElement w = element_from_string(real->weyl_datum(), w_s);
            out.emit(fibers_with_escalation(real, w, m));
          } else {
            for (int s = 0; s < rank; ++s) {
              WeylElement w =
                  WeylElement::identity(real->weyl_datum()).mult_gen_right(s);
              out.emit(fibers_with_escalation(real, w, m));
            }
          }
        } else if (c == "closure") {
          if (!w_s.empty() && !sweep) {
            WeylElement w = element_from_string(real->weyl_datum(), w_s);
            out.emit(check_closure_rational_counts(real, w));
          } else {
            for (int s = 0; s < rank; ++s) {
              WeylElement w =
                  WeylElement::identity(real->weyl_datum()).mult_gen_right(s);
              out.emit(check_closure_rational_counts(real, w));
            }
          }
        } else if (c == "x1") {
          if (s_gen >= 0 && !sweep) {
            out.emit(check_X1_closure(real, s_gen));
          } else {
            for (int s = 0; s < rank; ++s) out.emit(check_X1_closure(real, s));
          }
        } else if (c == "descent") {
          if (!set_s.empty() && !sweep) {
            out.emit(check_descent_chain(t, parse_generator_set(set_s), bound));
          } else {
            for (const auto& I : all_subsets(rank, true)) {
              if (!is_connected_union(t, I)) continue;
              out.emit(check_descent_chain(t, I, bound));
            }
          }
        } else {
          std::cerr << "unknown check: " << c << "\n";
          return 2;
        }
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return out.exit_code();
}
