#include "ordolex/stats.hpp"

#include <cmath>
#include <limits>

namespace ordolex {

PositionalProfile positional_mean_lengths(const std::vector<ClauseLayout>& corpus, int n) {
  if (n < 1) throw Error("domain", "slot count must be positive");

  PositionalProfile profile;
  profile.n_constituents = n;
  profile.mean_lengths.assign(n, std::numeric_limits<double>::quiet_NaN());

  std::vector<long long> sums(n, 0);
  for (const ClauseLayout& layout : corpus) {
    if (layout.n_constituents() != n) continue;
    ++profile.count;
    for (int slot = 0; slot < n; ++slot) {
      sums[slot] += layout.preverbal[slot].length;
    }
  }
  if (profile.count > 0) {
    for (int slot = 0; slot < n; ++slot) {
      profile.mean_lengths[slot] = static_cast<double>(sums[slot]) / profile.count;
    }
  }
  return profile;
}

std::string to_string(OrderTag t) {
  switch (t) {
    case OrderTag::reference: return "reference";
    case OrderTag::random: return "random";
    case OrderTag::ascending: return "ascending";
    case OrderTag::descending: return "descending";
    case OrderTag::least_effort: return "least_effort";
  }
  throw Error("domain", "unknown order tag");
}

OrderTag order_tag_from_string(const std::string& name) {
  if (name == "reference") return OrderTag::reference;
  if (name == "random") return OrderTag::random;
  if (name == "ascending") return OrderTag::ascending;
  if (name == "descending") return OrderTag::descending;
  if (name == "least_effort") return OrderTag::least_effort;
  throw Error("domain", "unknown order tag: " + name);
}

std::optional<double> mean_normalized_dl(const std::vector<TaggedVariant>& records,
                                         OrderTag tag, int n) {
  double sum = 0.0;
  long count = 0;
  for (const TaggedVariant& tv : records) {
    if (tv.tag != tag || tv.rec.n_constituents != n) continue;
    if (tv.rec.n_words <= 0) {
      throw Error("domain", "record has no countable words: " + tv.rec.sent_id);
    }
    sum += static_cast<double>(tv.rec.total_dl) / tv.rec.n_words;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error("domain", "pearson needs two equally long columns of size >= 2");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error("constant", "correlation undefined for a constant column");
  }
  return sxy / std::sqrt(sxx * syy);
}

ZParams fit_zscore(const std::vector<double>& column) {
  if (column.size() < 2) throw Error("domain", "z-scoring needs at least two values");
  double mean = 0;
  for (double x : column) mean += x;
  mean /= static_cast<double>(column.size());
  double ss = 0;
  for (double x : column) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(column.size() - 1));
  if (sd == 0.0) throw Error("zero-spread", "cannot z-score a constant column");
  return {mean, sd};
}

std::vector<double> zscore(const std::vector<double>& column) {
  const ZParams z = fit_zscore(column);
  std::vector<double> out;
  out.reserve(column.size());
  for (double x : column) out.push_back(z.apply(x));
  return out;
}

std::map<std::string, double> deprel_position_profile(const std::vector<ClauseLayout>& corpus,
                                                      SlotSelector slot) {
  std::map<std::string, long> counts;
  long total = 0;
  for (const ClauseLayout& layout : corpus) {
    if (layout.n_constituents() == 0) continue;
    const Constituent& c = slot == SlotSelector::first ? layout.preverbal.front()
                                                       : layout.preverbal.back();
    ++counts[c.head_deprel];
    ++total;
  }
  if (total == 0) throw Error("domain", "no layouts with preverbal constituents");

  std::map<std::string, double> proportions;
  for (const auto& [deprel, count] : counts) {
    proportions[deprel] = static_cast<double>(count) / total;
  }
  return proportions;
}

}  // namespace ordolex
