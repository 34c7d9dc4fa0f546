#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cehom/ce_complex.hpp"
#include "cehom/dense_oracle.hpp"
#include "cehom/e2_ledger.hpp"
#include "cehom/errors.hpp"
#include "cehom/json_io.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace cehom;

// ---------------------------------------------------------------------------
// Surface selection shared by all subcommands.
// ---------------------------------------------------------------------------

struct SurfaceOpts {
  std::string surface = "torus";
  int genus = 1;
  bool closed = false;
  bool punctured = false;
  std::string algebra_path;

  CLI::Option* surface_opt = nullptr;
  CLI::Option* genus_opt = nullptr;
  CLI::Option* closed_opt = nullptr;
  CLI::Option* punctured_opt = nullptr;
  CLI::Option* algebra_opt = nullptr;

  bool any_given() const {
    return surface_opt->count() || genus_opt->count() || closed_opt->count() ||
           punctured_opt->count() || algebra_opt->count();
  }
};

void attach_surface_flags(CLI::App* cmd, SurfaceOpts& o) {
  o.surface_opt = cmd->add_option("--surface", o.surface,
                                  "Surface preset: torus, closed, punctured or custom")
                      ->check(CLI::IsMember({"torus", "closed", "punctured", "custom"}));
  o.genus_opt = cmd->add_option("--genus", o.genus, "Genus of the surface preset (default 1)");
  o.closed_opt = cmd->add_flag("--closed", o.closed, "Use the closed surface of the given genus");
  o.punctured_opt =
      cmd->add_flag("--punctured", o.punctured, "Use the once-punctured surface of the given genus");
  o.closed_opt->excludes(o.punctured_opt);
  o.algebra_opt = cmd->add_option("--algebra", o.algebra_path,
                                  "JSON file describing a custom coefficient algebra")
                      ->check(CLI::ExistingFile);
}

Surface resolve_surface(const SurfaceOpts& o) {
  if (o.algebra_opt->count() || o.surface == "custom") {
    if (!o.algebra_opt->count())
      throw ValidationError("custom surfaces need --algebra <file>");
    if (o.closed || o.punctured || o.genus_opt->count())
      throw ValidationError("--algebra replaces the surface presets; drop the preset flags");
    std::ifstream in(o.algebra_path);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in.good() && !in.eof())
      throw ValidationError("could not read " + o.algebra_path);
    return Surface::custom(text.str());
  }
  int genus = o.genus;
  if (o.surface == "torus") {
    if (o.genus_opt->count() && o.genus != 1)
      throw ValidationError("the torus preset means genus 1; use --surface closed --genus " +
                            std::to_string(o.genus));
    genus = 1;
  }
  bool punctured = o.punctured || (o.surface == "punctured" && !o.closed);
  return punctured ? Surface::punctured(genus) : Surface::closed(genus);
}

void print_caveat(const Surface& surface) {
  std::string caveat = surface.caveat();
  if (!caveat.empty()) std::cerr << "note: " << caveat << "\n";
}

// ---------------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------------

const char* outcome_name(TorsionOutcome outcome) {
  switch (outcome) {
    case TorsionOutcome::Equal: return "equal";
    case TorsionOutcome::TotalOnly: return "total-only";
    case TorsionOutcome::Mismatch: return "mismatch";
  }
  return "unknown";
}

void print_table_pretty(const DimensionTable& table, const std::string& surface,
                        const std::string& field_name) {
  std::cout << "surface: " << surface << "   field: " << field_name << "\n";
  std::cout << "conventions: koszul_sign=" << kKoszulConventionTag
            << "  bidegree=" << kBidegreeConventionTag << "\n";
  for (int w : table.weights()) {
    std::cout << "weight " << w << ":\n";
    std::cout << "  degree  dim\n";
    for (const auto& [degree, dim] : table.totals(w))
      std::cout << "  " << degree << "       " << dim << "\n";
    std::cout << "  total   " << table.total_dimension(w) << "\n";
  }
}

json table_degrees_json(const DimensionTable& table, int weight) {
  json dims = json::object();
  for (const auto& [degree, dim] : table.totals(weight)) dims[std::to_string(degree)] = dim;
  return dims;
}

// ---------------------------------------------------------------------------
// betti
// ---------------------------------------------------------------------------

struct BettiOpts {
  SurfaceOpts surface;
  int max_weight = 7;
  int weight = 0;
  std::string field = "Q";
  std::string format = "pretty";
  CLI::Option* weight_opt = nullptr;
};

DimensionTable homology_range(const Surface& surface, const Field& field, int lo, int hi,
                              const CEOptions& options = {}) {
  TensorLieAlgebra g = make_tensor_lie(surface, field, hi);
  DimensionTable out;
  for (int w = lo; w <= hi; ++w) {
    DimensionTable one = ce_homology(g, w, options);
    for (const auto& [key, dim] : one.raw()) {
      const auto& [weight, s, t] = key;
      out.add(weight, s, t, dim);
    }
  }
  return out;
}

int run_betti(const BettiOpts& o) {
  if (o.field != "Q")
    throw ValidationError("betti reports rational dimensions only; use `compare` for a prime");
  Surface surface = resolve_surface(o.surface);
  print_caveat(surface);

  int lo = 1, hi = o.max_weight;
  if (o.weight_opt->count()) lo = hi = o.weight;
  if (lo < 1) throw ValidationError("weight must be at least 1");

  Field rationals{FieldSpec::rationals()};
  DimensionTable table = homology_range(surface, rationals, lo, hi);

  if (o.format == "json") {
    std::cout << dimension_table_to_json(table, surface.display_name(), "Q") << "\n";
  } else if (o.format == "csv") {
    std::cout << dimension_table_to_csv(table, surface.display_name(), "Q");
  } else {
    print_table_pretty(table, surface.display_name(), "Q");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOpts {
  SurfaceOpts surface;
  std::uint64_t prime = 0;
  int max_weight = 0;
  int weight = 0;
  std::string format = "pretty";
  CLI::Option* weight_opt = nullptr;
  CLI::Option* max_weight_opt = nullptr;
};

int run_compare(const CompareOpts& o) {
  Field modp{FieldSpec::prime(o.prime)};  // validates the prime
  Surface surface = resolve_surface(o.surface);
  print_caveat(surface);

  std::vector<int> weights;
  if (o.weight_opt->count()) {
    if (o.weight < 1) throw ValidationError("weight must be at least 1");
    if (static_cast<std::uint64_t>(o.weight) > o.prime)
      throw ValidationError("weight " + std::to_string(o.weight) +
                            " exceeds the characteristic " + std::to_string(o.prime) +
                            "; weights above p are unsupported");
    weights.push_back(o.weight);
  } else {
    std::uint64_t hi = o.prime;
    if (o.max_weight_opt->count()) {
      if (o.max_weight < 1) throw ValidationError("maximum weight must be at least 1");
      if (static_cast<std::uint64_t>(o.max_weight) > o.prime)
        throw ValidationError("maximum weight " + std::to_string(o.max_weight) +
                              " exceeds the characteristic " + std::to_string(o.prime) +
                              "; weights above p are unsupported");
      hi = static_cast<std::uint64_t>(o.max_weight);
    }
    for (std::uint64_t w = 1; w <= hi; ++w) weights.push_back(static_cast<int>(w));
  }

  json out;
  out["surface"] = surface.display_name();
  out["prime"] = o.prime;
  out["weights"] = json::array();
  bool all_equal = true;
  bool any_mismatch = false;
  std::string csv_rows;

  for (int k : weights) {
    json entry;
    entry["weight"] = k;
    if (static_cast<std::uint64_t>(k) < o.prime) {
      CompareReport report = compare(surface, o.prime, k);
      entry["route"] = "chain-compare";
      TorsionOutcome outcome;
      if (report.per_degree_equal) {
        outcome = TorsionOutcome::Equal;
      } else if (report.rational.total_dimension(k) == report.modp.total_dimension(k)) {
        outcome = TorsionOutcome::TotalOnly;
      } else {
        outcome = TorsionOutcome::Mismatch;
      }
      entry["outcome"] = outcome_name(outcome);
      json rows = json::array();
      for (const auto& [degree, dq, dp] : report.rows)
        rows.push_back(json{{"degree", degree}, {"dim_Q", dq}, {"dim_Fp", dp}});
      entry["rows"] = rows;
      all_equal = all_equal && outcome == TorsionOutcome::Equal;
      any_mismatch = any_mismatch || outcome == TorsionOutcome::Mismatch;

      if (o.format == "pretty") {
        std::cout << "weight " << k << " [chain-compare]: " << outcome_name(outcome) << "\n";
        std::cout << "  degree  dim_Q  dim_F" << o.prime << "\n";
        for (const auto& [degree, dq, dp] : report.rows)
          std::cout << "  " << degree << "       " << dq << "      " << dp << "\n";
      }
      for (const auto& [degree, dq, dp] : report.rows) {
        csv_rows += surface.display_name() + ",Q," + std::to_string(k) + "," +
                    std::to_string(degree) + "," + std::to_string(dq) + "\n";
        csv_rows += surface.display_name() + ",F_" + std::to_string(o.prime) + "," +
                    std::to_string(k) + "," + std::to_string(degree) + "," +
                    std::to_string(dp) + "\n";
      }
    } else {
      E2Report report =
          o.prime == 3 ? e2_weight_3_char3(surface) : e2_weight_p(surface, o.prime);
      entry["route"] = o.prime == 3 ? "ledger-3" : "ledger-p";
      entry["outcome"] = outcome_name(report.outcome);
      json checks = json::array();
      for (const E2Check& c : report.checks)
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      entry["checks"] = checks;
      json extras = json::array();
      for (const UnaryClass& c : report.extras)
        extras.push_back(json{{"name", c.name()}, {"s", c.s}, {"t", c.t}});
      entry["extras"] = extras;
      entry["predicted"] = table_degrees_json(report.predicted, k);
      entry["rational"] = table_degrees_json(report.betti, k);
      if (!report.warning.empty()) entry["warning"] = report.warning;
      all_equal = all_equal && report.outcome == TorsionOutcome::Equal;
      any_mismatch = any_mismatch || report.outcome == TorsionOutcome::Mismatch;

      if (o.format == "pretty") {
        std::cout << "weight " << k << " [" << entry["route"].get<std::string>()
                  << "]: " << outcome_name(report.outcome) << "\n";
        for (const UnaryClass& c : report.extras)
          std::cout << "  extra class " << c.name() << " at (s,t) = (" << c.s << "," << c.t
                    << ")\n";
        for (const E2Check& c : report.checks)
          std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail
                    << "\n";
        if (!report.warning.empty()) std::cout << "  warning: " << report.warning << "\n";
      }
      for (const auto& [degree, dim] : report.betti.totals(k))
        csv_rows += surface.display_name() + ",Q," + std::to_string(k) + "," +
                    std::to_string(degree) + "," + std::to_string(dim) + "\n";
      for (const auto& [degree, dim] : report.predicted.totals(k))
        csv_rows += surface.display_name() + ",F_" + std::to_string(o.prime) + ":e2," +
                    std::to_string(k) + "," + std::to_string(degree) + "," +
                    std::to_string(dim) + "\n";
    }
    out["weights"].push_back(entry);
  }

  std::string verdict =
      all_equal ? "equal" : (any_mismatch ? "mismatch" : "total-only");
  out["verdict"] = verdict;

  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (o.format == "csv") {
    std::cout << "# conventions: koszul_sign=" << kKoszulConventionTag
              << "; bidegree=" << kBidegreeConventionTag << "\n";
    std::cout << "# verdict: " << verdict << "\n";
    std::cout << "surface,field,weight,degree,dim\n" << csv_rows;
  } else {
    if (all_equal) {
      std::cout << "verdict: per-degree equality holds through weight "
                << weights.back() << "; no " << o.prime << "-power torsion detected\n";
    } else {
      std::cout << "verdict: " << verdict << "\n";
    }
  }

  if (any_mismatch)
    throw CheckFailure("mod-" + std::to_string(o.prime) +
                       " and rational dimensions disagree in the compared range");
  return 0;
}

// ---------------------------------------------------------------------------
// selfcheck
// ---------------------------------------------------------------------------

struct SelfcheckOpts {
  SurfaceOpts surface;
  int max_weight = 7;
  std::vector<std::uint64_t> primes{3, 5, 7};
  bool oracle = false;
  bool operadic = false;
  bool inject_sign_fault = false;
};

void euler_check(const ChainComplex& complex, const DimensionTable& homology) {
  std::map<std::pair<int, int>, long> chain_chi;
  for (const auto& [key, dim] : chain_dimensions(complex)) {
    const auto& [w, t, l] = key;
    chain_chi[{w, t}] += (l % 2 == 0 ? dim : -dim);
  }
  std::map<std::pair<int, int>, long> hom_chi;
  for (const auto& [key, dim] : homology.raw()) {
    const auto& [w, s, t] = key;
    int l = s + 1;
    hom_chi[{w, t}] += (l % 2 == 0 ? dim : -dim);
  }
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, v] : chain_chi) keys.insert(k);
  for (const auto& [k, v] : hom_chi) keys.insert(k);
  for (const auto& key : keys) {
    long lhs = chain_chi.count(key) ? chain_chi.at(key) : 0;
    long rhs = hom_chi.count(key) ? hom_chi.at(key) : 0;
    if (lhs != rhs)
      throw CheckFailure("Euler characteristic mismatch at weight " +
                         std::to_string(key.first) + ", t = " + std::to_string(key.second) +
                         ": chains give " + std::to_string(lhs) + ", homology gives " +
                         std::to_string(rhs));
  }
}

int run_selfcheck(const SelfcheckOpts& o) {
  std::vector<Surface> surfaces;
  if (o.surface.any_given()) {
    surfaces.push_back(resolve_surface(o.surface));
  } else {
    surfaces = {Surface::torus(), Surface::closed(2), Surface::punctured(1),
                Surface::punctured(2)};
  }
  std::vector<Field> fields{Field{FieldSpec::rationals()}};
  for (std::uint64_t p : o.primes) fields.push_back(Field{FieldSpec::prime(p)});
  if (o.max_weight < 1) throw ValidationError("maximum weight must be at least 1");
  CEOptions options;
  options.inject_sign_fault = o.inject_sign_fault;

  for (const Surface& surface : surfaces) {
    print_caveat(surface);
    for (const Field& field : fields) {
      TensorLieAlgebra g = make_tensor_lie(surface, field, o.max_weight);
      for (int w = 1; w <= o.max_weight; ++w) {
        ChainComplex complex = build_ce_complex(g, w, options);
        DimensionTable homology = homology_dims(complex, field);  // validates d^2 = 0
        euler_check(complex, homology);
        if (o.oracle && w <= 4) {
          DimensionTable reference = oracle::homology_dims_dense(complex, field);
          if (!(homology == reference))
            throw CheckFailure("sparse and dense homology dimensions disagree for " +
                               surface.display_name() + " over " + field.name() +
                               " at weight " + std::to_string(w));
          for (const SparseMap& boundary : complex.boundaries) {
            if (rank(boundary, field) != oracle::dense_rank(boundary, field))
              throw CheckFailure("sparse and dense ranks disagree for " +
                                 surface.display_name() + " over " + field.name() +
                                 " at weight " + std::to_string(w));
          }
        }
      }
      std::cout << "[ok] boundary squares to zero and Euler counts agree: "
                << surface.display_name() << " over " << field.name() << ", weights 1.."
                << o.max_weight << "\n";
      if (o.oracle)
        std::cout << "[ok] dense reference agrees: " << surface.display_name() << " over "
                  << field.name() << ", weights 1..4\n";
    }
  }

  if (o.operadic) {
    Field f3{FieldSpec::prime(3)};
    LieBasis operadic = free_lie_basis({Generator{"x2", 2, 1}}, std::max(o.max_weight, 3), f3,
                                       CharMode::OperadicChar3);
    if (operadic.dim(3) != 1)
      throw CheckFailure("the operadic regime over F_3 must keep one weight-3 bracket, found " +
                         std::to_string(operadic.dim(3)));
    for (int w = 4; w <= o.max_weight; ++w)
      if (operadic.dim(w) != 0)
        throw CheckFailure("the operadic regime over F_3 must vanish above weight 3");
    std::cout << "[ok] operadic relation regime over F_3: weight dimensions 1,1,1,0,...\n";

    // The surviving weight-3 bracket stands for a unary operation the
    // quadratic boundary cannot see, so complexes are not built in this
    // regime; the weight-3 accounting goes through the ledger instead.
    for (const Surface& surface : surfaces) {
      E2Report report = e2_weight_3_char3(surface, options);
      if (report.outcome == TorsionOutcome::Mismatch)
        throw CheckFailure("characteristic-3 bookkeeping does not match the rational "
                           "dimensions for " + surface.display_name());
      std::cout << "[ok] characteristic-3 route: " << surface.display_name()
                << " (outcome " << outcome_name(report.outcome) << ")\n";
    }
  }

  std::cout << "selfcheck passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weight-graded homology of the bracket complexes attached to surfaces"};
  app.require_subcommand(1);

  BettiOpts betti_opts;
  CLI::App* betti = app.add_subcommand(
      "betti", "Rational homology dimensions per weight (one weight = one particle count)");
  attach_surface_flags(betti, betti_opts.surface);
  betti->add_option("--max-weight", betti_opts.max_weight, "Compute weights 1..N (default 7)");
  betti_opts.weight_opt =
      betti->add_option("--weight", betti_opts.weight, "Compute a single weight");
  betti_opts.weight_opt->excludes("--max-weight");
  betti->add_option("--field", betti_opts.field, "Coefficient field (only Q is accepted here)");
  betti->add_option("--format", betti_opts.format, "pretty, json or csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));

  CompareOpts compare_opts;
  CLI::App* cmp = app.add_subcommand(
      "compare", "Check mod-p dimensions against the rational ones for weights up to p");
  attach_surface_flags(cmp, compare_opts.surface);
  cmp->add_option("--prime", compare_opts.prime, "Odd prime p")->required();
  compare_opts.max_weight_opt =
      cmp->add_option("--max-weight", compare_opts.max_weight, "Compare weights 1..N (default p)");
  compare_opts.weight_opt =
      cmp->add_option("--weight", compare_opts.weight, "Compare a single weight");
  compare_opts.weight_opt->excludes("--max-weight");
  cmp->add_option("--format", compare_opts.format, "pretty, json or csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));

  SelfcheckOpts self_opts;
  CLI::App* self = app.add_subcommand(
      "selfcheck", "Internal consistency checks: square-zero, Euler counts, reference ranks");
  attach_surface_flags(self, self_opts.surface);
  self->add_option("--max-weight", self_opts.max_weight, "Check weights 1..N (default 7)");
  self->add_option("--primes", self_opts.primes, "Comma-separated primes to check (default 3,5,7)")
      ->delimiter(',');
  self->add_flag("--oracle", self_opts.oracle,
                 "Also cross-check against the dense reference elimination (weights 1..4)");
  self->add_flag("--operadic-char3", self_opts.operadic,
                 "Also check the operadic relation regime over F_3");
  self->add_flag("--inject-sign-fault", self_opts.inject_sign_fault)->group("");

  int rc = 0;
  betti->callback([&] { rc = run_betti(betti_opts); });
  cmp->callback([&] { rc = run_compare(compare_opts); });
  self->callback([&] { rc = run_selfcheck(self_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
