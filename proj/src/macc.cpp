#include "sicps/macc.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sicps/coloring.hpp"
#include "sicps/field.hpp"
#include "sicps/icp.hpp"

namespace sicps {

void CcdnConfig::validate() const {
  if (files < 1) throw std::invalid_argument("N must be at least 1");
  if (users < 1) throw std::invalid_argument("K must be at least 1");
  if (access < 1 || access > users) throw std::invalid_argument("L must lie in [1, K]");
}

std::vector<int> CcdnConfig::caches_of(int user) const {
  std::vector<int> out;
  for (int j = 0; j < access; ++j) out.push_back(wrap(user + j, users));
  return out;
}

bool CcdnConfig::user_sees(int user, const std::vector<int>& set) const {
  // Cache c is reachable from user k iff c - k mod K lies in [0, L).
  return std::any_of(set.begin(), set.end(), [&](int c) { return wrap(c - user + 1, users) <= access; });
}

int max_multiplier(int users, int access) { return users / access; }

namespace {

void check_multiplier(int users, int access, int w) {
  if (access < 1 || access > users) throw std::invalid_argument("L must lie in [1, K]");
  if (w < 1 || w > max_multiplier(users, access)) {
    throw std::invalid_argument("w must lie in [1, floor(K/L)] = [1, " + std::to_string(max_multiplier(users, access)) +
                                "]");
  }
}

void extend_sets(int users, int access, int w, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == w) {
    out.push_back(current);
    return;
  }
  const int start = current.empty() ? 1 : current.back() + access;
  // The wrap-around distance from the last element back to the first must stay >= L.
  const int limit = current.empty() ? users : current.front() + users - access;
  for (int c = start; c <= std::min(users, limit); ++c) {
    current.push_back(c);
    extend_sets(users, access, w, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> enumerate_placement_sets(int users, int access, int w) {
  check_multiplier(users, access, w);
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  extend_sets(users, access, w, current, out);
  return out;
}

BigInt placement_set_count(int users, int access, int w) {
  check_multiplier(users, access, w);
  return BigInt(users) * binomial(users - w * access + w - 1, w - 1) / w;
}

Rational PlacementPlan::cache_load(int cache) const {
  return Rational(config.files) * subfiles_per_cache(cache) * subfile_size;
}

int PlacementPlan::subfiles_per_cache(int cache) const {
  return static_cast<int>(std::count_if(sets.begin(), sets.end(), [&](const std::vector<int>& s) {
    return std::find(s.begin(), s.end(), cache) != s.end();
  }));
}

PlacementPlan placement_map(const CcdnConfig& config, int w) {
  config.validate();
  PlacementPlan plan;
  plan.config = config;
  plan.w = w;
  plan.sets = enumerate_placement_sets(config.users, config.access, w);
  for (std::size_t j = 0; j < plan.sets.size(); ++j) plan.index[plan.sets[j]] = static_cast<int>(j);
  plan.subfile_size = Rational(1, static_cast<long long>(plan.sets.size()));
  return plan;
}

namespace {

// Common prefactor: numerator term for one composition with largest part t.
long long rate_term(int users, int access, int w, int largest) {
  return std::min<long long>(2LL * (users - w * access) + w - 1 - largest, users);
}

Rational rate_denominator(int users, int access, int w) {
  return Rational(placement_set_count(users, access, w) * (w + 1));
}

}  // namespace

Rational rate_new(int users, int access, int w) {
  check_multiplier(users, access, w);
  const int n = users - w * access - 1;
  if (n < 0) return Rational(0);
  BigInt sum = 0;
  BigInt below = 0;  // compositions with every part < t
  for (int t = 0; t <= n; ++t) {
    const BigInt upto = composition_count_max_below(n, w + 1, t + 1);
    sum += (upto - below) * rate_term(users, access, w, t);
    below = upto;
  }
  return Rational(sum) / rate_denominator(users, access, w);
}

Rational rate_new_enumerated(int users, int access, int w) {
  check_multiplier(users, access, w);
  const int n = users - w * access - 1;
  if (n < 0) return Rational(0);
  BigInt sum = 0;
  for_each_weak_composition(n, w + 1, [&](const std::vector<int>& parts) {
    sum += rate_term(users, access, w, *std::max_element(parts.begin(), parts.end()));
  });
  return Rational(sum) / rate_denominator(users, access, w);
}

Rational rate_hkd(int users, int access, int w) {
  check_multiplier(users, access, w);
  return Rational(users - w * access, 1 + w);
}

Rational rate_rk(int files, int users, int access, const Rational& memory) {
  if (memory < 0) throw std::invalid_argument("memory must be non-negative");
  const Rational load = Rational(access) * memory / files;
  if (load > 1) throw std::invalid_argument("rate_rk needs LM <= N");
  return Rational(users) * (1 - load) * (1 - load);
}

bool closed_form_applies(int users, int access) {
  // smallest max part over compositions never drops below K-2L, so the K cap is inactive
  return access >= 1 && access <= users && (users - access) / 2 >= users - 2 * access;
}

Rational rate_closed_form_large_L(int users, int access) {
  if (access > users) throw std::invalid_argument("L must not exceed K");
  if (!closed_form_applies(users, access)) throw std::invalid_argument("closed form needs L near or above K/2");
  const long long d = users - access;
  long long numerator = d * (5 * d + 2);
  if ((d - 1) % 2 == 0) numerator += 1;
  if (d == 0) numerator = 0;
  return Rational(numerator, 8LL * users);
}

Rational rate_large_L_cap(int users, int access) {
  const long long d = users - access;
  return Rational(5 * d * (d + 1), 8LL * users);
}

std::string to_string(RateSource source) {
  switch (source) {
    case RateSource::New: return "NEW";
    case RateSource::Hkd: return "HKD";
    case RateSource::Rk: return "RK";
    case RateSource::ClosedForm: return "CLOSED_FORM";
    case RateSource::Extreme: return "EXTREME";
    case RateSource::MemoryShared: return "MEMORY_SHARED";
  }
  return "UNKNOWN";
}

namespace {

// Cross product sign of (b - a) x (c - a).
Rational turn(const RatePoint& a, const RatePoint& b, const RatePoint& c) {
  return (b.memory - a.memory) * (c.rate - a.rate) - (b.rate - a.rate) * (c.memory - a.memory);
}

std::vector<RatePoint> corner_points(const CcdnConfig& config) {
  config.validate();
  const int K = config.users;
  const int L = config.access;
  std::vector<RatePoint> corners;
  corners.push_back({Rational(0), Rational(K), RateSource::Extreme});
  for (int w = 1; w <= max_multiplier(K, L); ++w) {
    corners.push_back({Rational(w * config.files, K), rate_new(K, L, w), RateSource::New});
  }
  const int full = (K + L - 1) / L;
  if (full != max_multiplier(K, L)) corners.push_back({Rational(full * config.files, K), Rational(0), RateSource::Extreme});
  return corners;
}

}  // namespace

std::vector<RatePoint> tradeoff_curve(const CcdnConfig& config, int samples) {
  if (samples < 0) throw std::invalid_argument("samples must be non-negative");
  const std::vector<RatePoint> corners = corner_points(config);

  std::vector<RatePoint> hull;
  for (const RatePoint& p : corners) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  std::vector<RatePoint> curve;
  for (const RatePoint& p : corners) {
    const Rational rate = curve_rate_at(hull, p.memory);
    curve.push_back({p.memory, rate, rate == p.rate ? p.source : RateSource::MemoryShared});
  }
  const Rational top = corners.back().memory;
  for (int j = 1; j <= samples; ++j) {
    const Rational m = top * j / (samples + 1);
    const bool corner = std::any_of(corners.begin(), corners.end(), [&](const RatePoint& c) { return c.memory == m; });
    if (!corner) curve.push_back({m, curve_rate_at(hull, m), RateSource::MemoryShared});
  }
  std::stable_sort(curve.begin(), curve.end(), [](const RatePoint& a, const RatePoint& b) { return a.memory < b.memory; });
  return curve;
}

std::vector<RatePoint> reference_points(const CcdnConfig& config) {
  config.validate();
  std::vector<RatePoint> out;
  for (int w = 1; w <= max_multiplier(config.users, config.access); ++w) {
    const Rational m(w * config.files, config.users);
    out.push_back({m, rate_hkd(config.users, config.access, w), RateSource::Hkd});
    out.push_back({m, rate_rk(config.files, config.users, config.access, m), RateSource::Rk});
  }
  return out;
}

Rational curve_rate_at(const std::vector<RatePoint>& curve, const Rational& memory) {
  if (curve.empty()) throw std::invalid_argument("empty curve");
  if (memory <= curve.front().memory) return curve.front().rate;
  for (std::size_t j = 1; j < curve.size(); ++j) {
    if (memory <= curve[j].memory) {
      const RatePoint& a = curve[j - 1];
      const RatePoint& b = curve[j];
      return a.rate + (b.rate - a.rate) * (memory - a.memory) / (b.memory - a.memory);
    }
  }
  return curve.back().rate;
}

std::string to_csv(const std::vector<RatePoint>& points) {
  std::ostringstream out;
  out << "M_exact,M_decimal,rate_exact,rate_decimal,source\n";
  for (const RatePoint& p : points) {
    out << to_fraction_string(p.memory) << ',' << to_decimal_string(p.memory) << ',' << to_fraction_string(p.rate)
        << ',' << to_decimal_string(p.rate) << ',' << to_string(p.source) << '\n';
  }
  return out.str();
}

std::vector<int> DeliveryTable::cell_set(int row, int column) const {
  std::vector<int> out;
  for (int c : columns[static_cast<std::size_t>(column - 1)].set) out.push_back(wrap(c + row - 1, config.users));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Reads the interference chunk sizes of a column from row 1's point of view.
Composition label_column(const CcdnConfig& config, int w, const std::vector<int>& set) {
  Composition label;
  int run = 0;
  int row = 2;
  while (row <= config.users) {
    std::vector<int> shifted;
    for (int c : set) shifted.push_back(wrap(c + row - 1, config.users));
    if (!config.user_sees(1, shifted)) {
      ++run;
      ++row;
      continue;
    }
    label.parts.push_back(run);
    run = 0;
    for (int r = 0; r < config.access; ++r, ++row) {
      std::vector<int> known;
      for (int c : set) known.push_back(wrap(c + row - 1, config.users));
      if (row > config.users || !config.user_sees(1, known)) throw std::logic_error("side-information chunk is not L long");
    }
  }
  label.parts.push_back(run);
  if (static_cast<int>(label.size()) != w + 1) throw std::logic_error("column does not split into w+1 chunks");
  return label;
}

}  // namespace

DeliveryTable build_delivery_icp(const CcdnConfig& config, int w, const std::vector<int>& demands) {
  config.validate();
  check_multiplier(config.users, config.access, w);
  if (static_cast<int>(demands.size()) != config.users) {
    throw std::invalid_argument("expected " + std::to_string(config.users) + " demands, got " +
                                std::to_string(demands.size()));
  }
  for (int d : demands) {
    if (d < 1 || d > config.files) throw std::invalid_argument("demand " + std::to_string(d) + " is not a file in [1, N]");
  }
  DeliveryTable table;
  table.config = config;
  table.w = w;
  table.demands = demands;
  for (const auto& set : enumerate_placement_sets(config.users, config.access, w)) {
    if (config.user_sees(1, set)) continue;
    table.columns.push_back({set, label_column(config, w, set)});
  }
  return table;
}

SimulationReport end_to_end_simulate(const CcdnConfig& config, int w, const std::vector<int>& demands,
                                     std::optional<std::uint64_t> field_order, std::uint64_t seed) {
  const DeliveryTable table = build_delivery_icp(config, w, demands);
  const PlacementPlan plan = placement_map(config, w);
  const int K = config.users;
  const int L = config.access;
  const std::size_t symbols = static_cast<std::size_t>(w) + 1;  // every split factor divides w+1

  SimulationReport report;
  report.field = field_order.value_or(default_field_order(K));
  const PrimeField field(report.field);
  report.formula_rate = rate_new(K, L, w);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, report.field - 1);
  // contents[f-1][set index]
  std::vector<std::vector<Packet>> contents(static_cast<std::size_t>(config.files));
  for (auto& file : contents) {
    file.resize(plan.sets.size());
    for (auto& sub : file) {
      sub.resize(symbols);
      for (auto& x : sub) x = static_cast<Symbol>(draw(rng));
    }
  }
  auto subfile = [&](int file, const std::vector<int>& set) -> const Packet& {
    return contents[static_cast<std::size_t>(file - 1)][static_cast<std::size_t>(plan.index.at(set))];
  };

  // recovered[k-1][set index]: pieces decoded by user k, empty when nothing arrived.
  std::vector<std::vector<Packet>> recovered(static_cast<std::size_t>(K), std::vector<Packet>(plan.sets.size()));

  std::map<std::vector<int>, int> column_of_label;
  for (std::size_t c = 0; c < table.columns.size(); ++c) column_of_label[table.columns[c].label.parts] = static_cast<int>(c) + 1;

  std::uint64_t sent_symbols = 0;
  if (!table.columns.empty()) {
    std::vector<Composition> labels;
    for (const auto& column : table.columns) labels.push_back(column.label);
    for (const RotationClass& cls : group_rotation_classes(labels)) {
      const int period = cls.period();
      const int split = cls.repeat;
      const std::size_t piece = symbols / static_cast<std::size_t>(split);
      const GapVector spec(cls.representative.parts, L);
      const UnionIcp bar = build_union_icp(spec);
      const SuicpGraph expected = to_suicp(bar);

      auto column_for = [&](int t) { return column_of_label.at(rotate_gaps(cls.representative.parts, t - 1)); };
      auto set_for = [&](const Node& node) { return table.cell_set(node.user, column_for(node.column)); };

      const SuicpGraph actual(expected.nodes(), [&](std::size_t u, std::size_t v) {
        return u != v && config.user_sees(expected.node(u).user, set_for(expected.node(v)));
      });
      if (!(actual == expected)) throw std::logic_error("class " + spec.to_string() + " does not match its bar ICP");

      const Coloring coloring = theorem1_coloring(bar);
      const TransmissionScheme scheme = build_mds_scheme(actual, coloring, report.field);

      std::vector<Packet> messages;
      for (const Node& node : actual.nodes()) {
        const Packet& whole = subfile(demands[static_cast<std::size_t>(node.user - 1)], set_for(node));
        const auto offset = static_cast<std::ptrdiff_t>(static_cast<std::size_t>((node.column - 1) / period) * piece);
        messages.emplace_back(whole.begin() + offset, whole.begin() + offset + static_cast<std::ptrdiff_t>(piece));
      }
      const std::vector<Packet> transmissions = scheme.encode(messages);
      sent_symbols += transmissions.size() * piece;

      for (std::size_t u = 0; u < actual.size(); ++u) {
        const Node& me = actual.node(u);
        Packet decoded;
        try {
          decoded = decode_node(scheme, actual, u, transmissions, [&](std::size_t v) -> const Packet& {
            if (!config.user_sees(me.user, set_for(actual.node(v)))) {
              throw std::logic_error("user " + std::to_string(me.user) + " read a subfile outside its caches");
            }
            return messages[v];
          });
        } catch (const std::exception& e) {
          report.failures.push_back("class " + spec.to_string() + " node (" + std::to_string(me.user) + "," +
                                    std::to_string(me.column) + "): " + e.what());
          continue;
        }
        const auto slot = static_cast<std::size_t>(plan.index.at(set_for(me)));
        Packet& target = recovered[static_cast<std::size_t>(me.user - 1)][slot];
        if (target.empty()) target.assign(symbols, 0);
        std::copy(decoded.begin(), decoded.end(),
                  target.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>((me.column - 1) / period) * piece));
      }

      ClassReport summary;
      summary.representative = cls.representative.parts;
      for (const Composition& member : cls.members) summary.columns.push_back(column_of_label.at(member.parts));
      summary.split = split;
      summary.chi = scheme.chi();
      summary.upper_ru = upper_bound_ru(spec);
      summary.rate = Rational(scheme.chi() * static_cast<long long>(piece)) /
                     (Rational(static_cast<long long>(plan.sets.size())) * static_cast<long long>(symbols));
      report.classes.push_back(std::move(summary));
    }
  }

  for (int k = 1; k <= K; ++k) {
    const int file = demands[static_cast<std::size_t>(k - 1)];
    for (std::size_t j = 0; j < plan.sets.size(); ++j) {
      if (config.user_sees(k, plan.sets[j])) continue;  // read straight from an accessible cache
      const auto& got = recovered[static_cast<std::size_t>(k - 1)][j];
      if (got.empty() || got != subfile(file, plan.sets[j])) {
        std::ostringstream msg;
        msg << "user " << k << " failed to rebuild the subfile of file " << file << " on caches {";
        for (std::size_t e = 0; e < plan.sets[j].size(); ++e) msg << (e ? "," : "") << plan.sets[j][e];
        msg << "}";
        report.failures.push_back(msg.str());
      }
    }
  }
  report.total_rate = Rational(static_cast<long long>(sent_symbols)) /
                      (Rational(static_cast<long long>(plan.sets.size())) * static_cast<long long>(symbols));
  report.decoded_ok = report.failures.empty();
  return report;
}

nlohmann::ordered_json to_json(const SimulationReport& report) {
  nlohmann::ordered_json out;
  out["decoded_ok"] = report.decoded_ok;
  out["field"] = report.field;
  out["total_rate"] = to_fraction_string(report.total_rate);
  out["total_rate_decimal"] = to_decimal_string(report.total_rate);
  out["rate_new"] = to_fraction_string(report.formula_rate);
  out["matches_rate_new"] = report.total_rate == report.formula_rate;
  auto classes = nlohmann::ordered_json::array();
  for (const ClassReport& c : report.classes) {
    nlohmann::ordered_json entry;
    entry["representative"] = c.representative;
    entry["columns"] = c.columns;
    entry["split"] = c.split;
    entry["chi"] = c.chi;
    entry["r_u"] = c.upper_ru;
    entry["rate"] = to_fraction_string(c.rate);
    classes.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  out["failures"] = report.failures;
  return out;
}

}  // namespace sicps
