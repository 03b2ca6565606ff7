#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordolex/dep_tree.hpp"
#include "ordolex/variants.hpp"

namespace ordolex {

// Slot-wise mean constituent lengths for clauses with exactly n_constituents
// preverbal constituents. Slot 1 is sentence-initial, slot n verb-adjacent.
struct PositionalProfile {
  int n_constituents = 0;
  std::vector<double> mean_lengths;  // NaN-filled when count == 0
  long count = 0;
};

PositionalProfile positional_mean_lengths(const std::vector<ClauseLayout>& corpus, int n);

enum class OrderTag { reference, random, ascending, descending, least_effort };
std::string to_string(OrderTag t);
OrderTag order_tag_from_string(const std::string& name);

struct TaggedVariant {
  OrderTag tag;
  VariantRecord rec;
};

// Mean of total_dl / n_words over records with the given tag and
// n_constituents == n. Empty selection yields nullopt, never zero.
std::optional<double> mean_normalized_dl(const std::vector<TaggedVariant>& records,
                                         OrderTag tag, int n);

// Sample correlation. Throws Error("constant") when either input has no spread.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

struct ZParams {
  double mean = 0.0;
  double sd = 1.0;  // sample standard deviation (n-1 denominator)

  double apply(double x) const { return (x - mean) / sd; }
};

// Throws Error("zero-spread") when the column is constant; requires >= 2 values.
ZParams fit_zscore(const std::vector<double>& column);
std::vector<double> zscore(const std::vector<double>& column);

enum class SlotSelector { first, last };

// Distribution over the deprel of the constituent head at the chosen
// preverbal slot; proportions sum to 1.
std::map<std::string, double> deprel_position_profile(const std::vector<ClauseLayout>& corpus,
                                                      SlotSelector slot);

}  // namespace ordolex
