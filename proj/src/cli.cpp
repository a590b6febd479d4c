#include "sicps/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "sicps/bounds.hpp"
#include "sicps/coloring.hpp"
#include "sicps/icp.hpp"
#include "sicps/macc.hpp"

namespace sicps {

namespace {

using Json = nlohmann::ordered_json;

// Thrown for failed checks that are not input errors.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format != "text") {
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

Json fraction(const Rational& value) { return to_fraction_string(value); }

Json rate_entry(const Rational& value) {
  Json entry;
  entry["exact"] = to_fraction_string(value);
  entry["decimal"] = to_decimal_string(value);
  return entry;
}

std::uint64_t checked_field(std::optional<std::uint64_t> requested, int colors) {
  const std::uint64_t q = requested.value_or(default_field_order(colors));
  if (!is_prime(q)) throw std::invalid_argument("field order " + std::to_string(q) + " is not prime");
  if (q < static_cast<std::uint64_t>(colors)) {
    throw std::invalid_argument("field order " + std::to_string(q) + " is smaller than the " + std::to_string(colors) +
                                " colors in use");
  }
  return q;
}

Json icp_analyze(const std::vector<int>& gaps, int L) {
  const GapVector canon = GapVector(gaps, L).canonical();
  const UnionIcp icp = build_union_icp(canon);
  const SuicpGraph graph = to_suicp(icp);
  const BoundReport bounds = analyze_bounds(canon);

  Json doc;
  doc["gaps"] = gaps;
  doc["canonical"] = canon.gaps();
  doc["L"] = L;
  doc["K"] = canon.users();
  doc["i"] = canon.files_per_user();
  const Json bound_doc = to_json(bounds);
  for (const auto& [key, value] : bound_doc.items()) doc[key] = value;
  doc["gap_ratio"] = fraction(gap_ratio(canon));

  const Coloring t1 = theorem1_coloring(icp);
  const ProperVerdict verdict = verify_proper(graph, t1);
  Json coloring;
  coloring["scheme"] = "theorem1";
  coloring["colors"] = t1.num_colors;
  coloring["proper"] = verdict.proper;
  coloring["local_chromatic"] = verdict.proper ? Json(local_chromatic_value(graph, t1)) : Json(nullptr);
  doc["coloring"] = coloring;

  Json t5 = nullptr;
  if (canon.files_per_user() == 2 && canon.users() % (canon.gap(1) + canon.gap(2) + 2) == 0) {
    const Coloring c5 = theorem5_coloring(icp);
    const ProperVerdict v5 = verify_proper(graph, c5);
    t5 = Json::object();
    t5["scheme"] = "theorem5";
    t5["colors"] = c5.num_colors;
    t5["proper"] = v5.proper;
    t5["local_chromatic"] = v5.proper ? Json(local_chromatic_value(graph, c5)) : Json(nullptr);
  }
  doc["theorem5"] = t5;

  if (!verdict.proper || (!t5.is_null() && !t5["proper"].get<bool>())) {
    throw VerificationFailure("coloring is not proper:\n" + doc.dump(2));
  }
  return doc;
}

Json icp_decode_test(const std::vector<int>& gaps, int L, std::optional<std::uint64_t> field_order, int trials,
                     std::uint64_t seed) {
  if (trials < 0) throw std::invalid_argument("trials must be non-negative");
  const GapVector spec(gaps, L);
  const UnionIcp icp = build_union_icp(spec);
  const SuicpGraph graph = to_suicp(icp);
  const Coloring coloring = theorem1_coloring(icp);
  const std::uint64_t q = checked_field(field_order, coloring.num_colors);
  const TransmissionScheme scheme = build_mds_scheme(graph, coloring, q);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, q - 1);
  constexpr std::size_t kWidth = 4;
  int failures = 0;
  Json failed = Json::array();
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Packet> messages(graph.size(), Packet(kWidth));
    for (auto& m : messages) {
      for (auto& x : m) x = static_cast<Symbol>(draw(rng));
    }
    const auto decoded = simulate_decode(scheme, graph, messages);
    for (std::size_t u = 0; u < graph.size(); ++u) {
      if (decoded[u] != messages[u]) {
        ++failures;
        if (failed.size() < 20) failed.push_back({trial, graph.node(u).user, graph.node(u).column});
      }
    }
  }
  Json doc;
  doc["gaps"] = gaps;
  doc["L"] = L;
  doc["K"] = spec.users();
  doc["field"] = q;
  doc["chi"] = scheme.chi();
  doc["trials"] = trials;
  doc["nodes"] = graph.size();
  doc["failures"] = failures;
  doc["failed_nodes"] = failed;
  doc["ok"] = failures == 0;
  if (failures != 0) throw VerificationFailure("decode failures:\n" + doc.dump(2));
  return doc;
}

Json macc_rate(int N, int K, int L, int w) {
  const CcdnConfig config{N, K, L};
  config.validate();
  const Rational memory(w * N, K);
  Json doc;
  doc["N"] = N;
  doc["K"] = K;
  doc["L"] = L;
  doc["w"] = w;
  doc["M"] = fraction(memory);
  doc["rate_new"] = rate_entry(rate_new(K, L, w));
  doc["rate_hkd"] = rate_entry(rate_hkd(K, L, w));
  doc["rate_rk"] = rate_entry(rate_rk(N, K, L, memory));
  if (w == 1 && closed_form_applies(K, L)) doc["rate_closed_form"] = rate_entry(rate_closed_form_large_L(K, L));
  return doc;
}

std::vector<int> default_demands(int N, int K) {
  std::vector<int> demands(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) demands[static_cast<std::size_t>(k - 1)] = wrap(k, N);
  return demands;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structured index coding and multi-access coded caching toolkit", "sicps"};
  app.require_subcommand(1);

  std::vector<int> gaps;
  std::vector<int> demands;
  int L = 0;
  int N = 0;
  int K = 0;
  int w = 0;
  int trials = 10;
  int samples = 0;
  std::optional<std::uint64_t> field;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
  const auto formats = CLI::IsMember({"json", "csv", "text"});

  auto* icp = app.add_subcommand("icp", "Structured index coding problems");
  icp->require_subcommand(1);
  auto* analyze = icp->add_subcommand("analyze", "Bounds, colorings and exact rates");
  analyze->add_option("--gaps", gaps, "Gap pattern a_i,...,a_1")->required()->delimiter(',');
  analyze->add_option("--L", L, "Chunk length")->required();
  analyze->add_option("--format", format)->check(formats);

  auto* decode = icp->add_subcommand("decode-test", "Randomized encode/decode check of the coloring scheme");
  decode->add_option("--gaps", gaps, "Gap pattern a_i,...,a_1")->required()->delimiter(',');
  decode->add_option("--L", L, "Chunk length")->required();
  decode->add_option("--field", field, "Prime field order");
  decode->add_option("--trials", trials, "Number of random trials");
  decode->add_option("--seed", seed, "Random seed")->required();
  decode->add_option("--format", format)->check(formats);

  auto* macc = app.add_subcommand("macc", "Multi-access coded caching");
  macc->require_subcommand(1);
  auto* rate = macc->add_subcommand("rate", "Rates at memory M = wN/K");
  rate->add_option("--N", N)->required();
  rate->add_option("--K", K)->required();
  rate->add_option("--L", L)->required();
  rate->add_option("--w", w)->required();
  rate->add_option("--format", format)->check(formats);

  auto* tradeoff = macc->add_subcommand("tradeoff", "Rate-memory curve");
  tradeoff->add_option("--N", N)->required();
  tradeoff->add_option("--K", K)->required();
  tradeoff->add_option("--L", L)->required();
  tradeoff->add_option("--samples", samples, "Extra evenly spaced memory-shared points");
  tradeoff->add_option("--out", out_path, "Write to this file instead of stdout");
  std::string tradeoff_format = "csv";
  tradeoff->add_option("--format", tradeoff_format)->check(formats);

  auto* simulate = macc->add_subcommand("simulate", "End-to-end placement, delivery and decoding");
  simulate->add_option("--N", N)->required();
  simulate->add_option("--K", K)->required();
  simulate->add_option("--L", L)->required();
  simulate->add_option("--w", w)->required();
  simulate->add_option("--demands", demands, "d_1,...,d_K (default: user k wants file <k>_N)")->delimiter(',');
  simulate->add_option("--field", field, "Prime field order");
  simulate->add_option("--seed", seed, "Random seed")->required();
  simulate->add_option("--format", format)->check(formats);

  std::vector<std::string> argv_storage{"sicps"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      emit(icp_analyze(gaps, L), format, out);
    } else if (decode->parsed()) {
      emit(icp_decode_test(gaps, L, field, trials, *seed), format, out);
    } else if (rate->parsed()) {
      if (format == "csv") {
        const Rational memory(w * N, K);
        out << "N,K,L,w,M_exact,rate_new,rate_hkd,rate_rk\n"
            << N << ',' << K << ',' << L << ',' << w << ',' << to_fraction_string(memory) << ','
            << to_fraction_string(rate_new(K, L, w)) << ',' << to_fraction_string(rate_hkd(K, L, w)) << ','
            << to_fraction_string(rate_rk(N, K, L, memory)) << '\n';
      } else {
        emit(macc_rate(N, K, L, w), format, out);
      }
    } else if (tradeoff->parsed()) {
      const CcdnConfig config{N, K, L};
      auto points = tradeoff_curve(config, samples);
      const auto refs = reference_points(config);
      points.insert(points.end(), refs.begin(), refs.end());
      std::string body;
      if (tradeoff_format == "json") {
        Json rows = Json::array();
        for (const RatePoint& p : points) {
          Json row;
          row["M"] = fraction(p.memory);
          row["rate"] = fraction(p.rate);
          row["source"] = to_string(p.source);
          rows.push_back(std::move(row));
        }
        body = rows.dump(2) + "\n";
      } else {
        body = to_csv(points);
      }
      if (out_path.empty()) {
        out << body;
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::invalid_argument("cannot open " + out_path + " for writing");
        file << body;
        if (!file) throw std::invalid_argument("failed writing " + out_path);
      }
    } else if (simulate->parsed()) {
      const CcdnConfig config{N, K, L};
      config.validate();
      if (demands.empty()) demands = default_demands(N, K);
      if (field) checked_field(field, K);
      const SimulationReport report = end_to_end_simulate(config, w, demands, field, *seed);
      Json doc;
      doc["N"] = N;
      doc["K"] = K;
      doc["L"] = L;
      doc["w"] = w;
      doc["demands"] = demands;
      const Json report_doc = to_json(report);
      for (const auto& [key, value] : report_doc.items()) doc[key] = value;
      emit(doc, format, out);
      if (!report.decoded_ok) return kExitVerification;
    }
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace sicps
