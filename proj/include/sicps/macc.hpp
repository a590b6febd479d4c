#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sicps/combinatorics.hpp"
#include "sicps/rational.hpp"

namespace sicps {

/// (N, K, L) multi-access network: K caches and K users, user k reads caches
/// k, k+1, ..., k+L-1 (cyclically). Files have unit size.
struct CcdnConfig {
  int files = 1;   // N
  int users = 1;   // K
  int access = 1;  // L

  /// Throws std::invalid_argument unless N >= 1 and 1 <= L <= K.
  void validate() const;
  /// Caches seen by user k (1-based), in access order.
  std::vector<int> caches_of(int user) const;
  /// True when user k reaches some cache in `set`.
  bool user_sees(int user, const std::vector<int>& set) const;
};

/// Largest valid memory multiplier floor(K/L).
int max_multiplier(int users, int access);

/// All w-subsets of [K] whose elements are pairwise at cyclic distance >= L,
/// lexicographically sorted. Throws when w is outside [1, floor(K/L)].
std::vector<std::vector<int>> enumerate_placement_sets(int users, int access, int w);

/// K * C(K-wL+w-1, w-1) / w.
BigInt placement_set_count(int users, int access, int w);

struct PlacementPlan {
  CcdnConfig config;
  int w = 1;
  std::vector<std::vector<int>> sets;  // the family S-hat
  std::map<std::vector<int>, int> index;
  Rational subfile_size;

  /// Memory used by cache c, in file units.
  Rational cache_load(int cache) const;
  /// Subfiles of one file stored in cache c.
  int subfiles_per_cache(int cache) const;
};

PlacementPlan placement_map(const CcdnConfig& config, int w);

/// Exact sum over the weak (w+1)-compositions b of K-wL-1 of
/// min{2(K-wL)+w-1-max(b), K}, divided by |S-hat|(w+1). Zero when wL = K.
/// Compositions are counted by their largest part, not listed.
Rational rate_new(int users, int access, int w);
/// Same value, by listing every composition.
Rational rate_new_enumerated(int users, int access, int w);
/// (K-wL)/(1+w).
Rational rate_hkd(int users, int access, int w);
/// K(1-LM/N)^2. Throws std::invalid_argument when LM > N or M < 0.
Rational rate_rk(int files, int users, int access, const Rational& memory);
/// True for every L >= K/2 and a few L just below it.
bool closed_form_applies(int users, int access);
/// Exact w = 1 rate. Throws std::invalid_argument unless closed_form_applies.
Rational rate_closed_form_large_L(int users, int access);
/// 5(K-L)(K-L+1)/(8K).
Rational rate_large_L_cap(int users, int access);

enum class RateSource { New, Hkd, Rk, ClosedForm, Extreme, MemoryShared };
std::string to_string(RateSource source);

struct RatePoint {
  Rational memory;
  Rational rate;
  RateSource source = RateSource::New;
};

/// Achievable curve: corner points M = 0, wN/K (w <= floor(K/L)) and
/// ceil(K/L)N/K, reduced to their lower convex envelope, plus `samples`
/// evenly spaced memory-shared points. Sorted by memory.
std::vector<RatePoint> tradeoff_curve(const CcdnConfig& config, int samples = 0);

/// HKD and RK values at the corner points w = 1..floor(K/L).
std::vector<RatePoint> reference_points(const CcdnConfig& config);

/// Achievable rate at an arbitrary memory value on the curve.
Rational curve_rate_at(const std::vector<RatePoint>& curve, const Rational& memory);

/// "M_exact,M_decimal,rate_exact,rate_decimal,source" rows.
std::string to_csv(const std::vector<RatePoint>& points);

/// One column of the delivery table. Row k holds the subfile of file d_k whose
/// cache set is `set` shifted by k-1.
struct DeliveryColumn {
  std::vector<int> set;  // cache set of row 1
  Composition label;     // interference chunk sizes seen from row 1
};

struct DeliveryTable {
  CcdnConfig config;
  int w = 1;
  std::vector<int> demands;  // d_1..d_K, 1-based file ids
  std::vector<DeliveryColumn> columns;

  /// Cache set of the cell at (row, column), both 1-based.
  std::vector<int> cell_set(int row, int column) const;
};

DeliveryTable build_delivery_icp(const CcdnConfig& config, int w, const std::vector<int>& demands);

struct ClassReport {
  std::vector<int> representative;
  std::vector<int> columns;  // delivery columns covered, 1-based
  int split = 1;             // pieces per subfile
  int chi = 0;               // transmitted pieces
  int upper_ru = 0;          // R_u of the representative
  Rational rate;
};

struct SimulationReport {
  bool decoded_ok = true;
  std::uint64_t field = 0;
  Rational total_rate;
  Rational formula_rate;
  std::vector<ClassReport> classes;
  std::vector<std::string> failures;
};

/// Places random file contents, builds one coded broadcast per rotation class,
/// decodes every user from its caches plus the broadcast and checks that each
/// user rebuilds its whole file. Throws std::invalid_argument on bad input.
SimulationReport end_to_end_simulate(const CcdnConfig& config, int w, const std::vector<int>& demands,
                                     std::optional<std::uint64_t> field_order, std::uint64_t seed);

nlohmann::ordered_json to_json(const SimulationReport& report);

}  // namespace sicps
