#include "lhsba/sampler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lhsba/error.hpp"
#include "lhsba/normal.hpp"

namespace lhsba {

namespace {

void check_shape(Eigen::Index count, Eigen::Index dim, const char* what) {
  if (count < 1 || dim < 1) throw DomainError(std::string(what) + ": M and d must be positive");
}

// Quantile-space edges of the `count` equal-probability strata: edge k is
// Phi^-1(k / M), with edges 0 and M at -inf and +inf.
std::vector<double> stratum_edges(Eigen::Index count) {
  std::vector<double> edges(static_cast<std::size_t>(count) + 1);
  edges.front() = -std::numeric_limits<double>::infinity();
  edges.back() = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < count; ++k) {
    edges[static_cast<std::size_t>(k)] = inverse_normal_cdf(static_cast<double>(k) / static_cast<double>(count));
  }
  return edges;
}

}  // namespace

std::string_view to_string(SamplerKind kind) noexcept {
  return kind == SamplerKind::Lhs ? "lhs" : "srs";
}

SamplerKind parse_sampler_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "lhs") return SamplerKind::Lhs;
  if (lower == "srs") return SamplerKind::Srs;
  throw DomainError("unknown sampler '" + std::string(text) + "' (expected lhs or srs)");
}

SampleBatch lhs_normal(Eigen::Index count, Eigen::Index dim, const RandomStream& rng) {
  check_shape(count, dim, "lhs_normal");
  SampleBatch batch;
  batch.kind = SamplerKind::Lhs;
  batch.seed = rng.seed();
  batch.rows.resize(count, dim);
  batch.strata = StratumMatrix(count, dim);

  const double width = 1.0 / static_cast<double>(count);
  const std::vector<double> edges = stratum_edges(count);
  std::vector<std::uint32_t> perm(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < dim; ++j) {
    RandomStream stream = rng.substream(static_cast<std::uint64_t>(j));
    std::iota(perm.begin(), perm.end(), 0u);
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[stream.below(i)]);
    }
    for (Eigen::Index i = 0; i < count; ++i) {
      const std::uint32_t k = perm[static_cast<std::size_t>(i)];
      const double lo = edges[k];
      const double hi = edges[k + 1];
      // (k + u) / M can round onto a stratum edge; redraw u until the value
      // is strictly inside.
      double z;
      do {
        const double p = (static_cast<double>(k) + stream.uniform_open()) * width;
        z = (p > 0.0 && p < 1.0) ? inverse_normal_cdf(p) : lo;
      } while (!(z > lo && z < hi));
      batch.rows(i, j) = z;
      (*batch.strata)(i, j) = k;
    }
  }
  return batch;
}

SampleBatch srs_normal(Eigen::Index count, Eigen::Index dim, const RandomStream& rng) {
  check_shape(count, dim, "srs_normal");
  SampleBatch batch;
  batch.kind = SamplerKind::Srs;
  batch.seed = rng.seed();
  batch.rows.resize(count, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    RandomStream stream = rng.substream(static_cast<std::uint64_t>(j));
    for (Eigen::Index i = 0; i < count; ++i) batch.rows(i, j) = inverse_normal_cdf(stream.uniform_open());
  }
  return batch;
}

SampleBatch sample_normal(SamplerKind kind, Eigen::Index count, Eigen::Index dim,
                          const RandomStream& rng) {
  return kind == SamplerKind::Lhs ? lhs_normal(count, dim, rng) : srs_normal(count, dim, rng);
}

SampleBatch normalize_rows(SampleBatch batch) {
  for (Eigen::Index i = 0; i < batch.rows.rows(); ++i) {
    const double norm = batch.rows.row(i).norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DegenerateSampleError("normalize_rows: row " + std::to_string(i) + " has zero or non-finite norm");
    }
    batch.rows.row(i) /= norm;
  }
  return batch;
}

SampleBatch draw_unit_batch(SamplerKind kind, Eigen::Index count, Eigen::Index dim,
                            const RandomStream& rng) {
  constexpr int kAttempts = 8;
  for (int attempt = 0;; ++attempt) {
    try {
      return normalize_rows(sample_normal(kind, count, dim, rng.substream(static_cast<std::uint64_t>(attempt))));
    } catch (const DegenerateSampleError&) {
      if (attempt + 1 == kAttempts) throw;
    }
  }
}

double batch_discrepancy(const SampleBatch& batch) {
  const Eigen::Index count = batch.count();
  if (count < 2) throw DomainError("batch_discrepancy: need at least 2 samples");
  const double n = static_cast<double>(count);
  std::vector<double> column(static_cast<std::size_t>(count));
  double worst = 0.0;
  for (Eigen::Index j = 0; j < batch.dim(); ++j) {
    for (Eigen::Index i = 0; i < count; ++i) column[static_cast<std::size_t>(i)] = batch.rows(i, j);
    std::sort(column.begin(), column.end());
    for (std::size_t i = 0; i < column.size(); ++i) {
      const double f = normal_cdf(column[i]);
      const double below = static_cast<double>(i) / n;
      const double above = static_cast<double>(i + 1) / n;
      worst = std::max({worst, above - f, f - below});
    }
  }
  return worst;
}

double mean_abs_column_mean(const SampleBatch& batch) {
  if (batch.count() == 0 || batch.dim() == 0) return 0.0;
  return batch.rows.colwise().mean().cwiseAbs().mean();
}

bool satisfies_latin_property(const SampleBatch& batch) {
  if (batch.kind != SamplerKind::Lhs || !batch.strata) return false;
  const auto& strata = *batch.strata;
  const Eigen::Index count = batch.count();
  if (strata.rows() != count || strata.cols() != batch.dim()) return false;
  const std::vector<double> edges = stratum_edges(count);
  std::vector<char> seen(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < batch.dim(); ++j) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Eigen::Index i = 0; i < count; ++i) {
      const std::uint32_t k = strata(i, j);
      if (static_cast<Eigen::Index>(k) >= count || seen[k]) return false;
      seen[k] = 1;
      const double z = batch.rows(i, j);
      if (!(z > edges[k] && z < edges[k + 1])) return false;
    }
  }
  return true;
}

}  // namespace lhsba
