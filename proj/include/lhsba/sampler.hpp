#ifndef LHSBA_SAMPLER_HPP
#define LHSBA_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "lhsba/random.hpp"

namespace lhsba {

enum class SamplerKind { Lhs, Srs };

std::string_view to_string(SamplerKind kind) noexcept;
// Accepts "lhs" / "srs" (case-insensitive). Throws DomainError otherwise.
SamplerKind parse_sampler_kind(std::string_view text);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StratumMatrix = Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// M noise vectors of dimension d, one per row.
//
// For LHS batches `strata(i, j)` is the equal-probability stratum of the
// standard normal that produced rows(i, j); each column of `strata` is a
// permutation of 0..M-1.
struct SampleBatch {
  RowMatrix rows;
  SamplerKind kind = SamplerKind::Srs;
  std::uint64_t seed = 0;
  std::optional<StratumMatrix> strata;

  Eigen::Index count() const noexcept { return rows.rows(); }
  Eigen::Index dim() const noexcept { return rows.cols(); }
};

// Latin hypercube sample of N(0, I_d): per dimension an independent random
// permutation of the M strata, with a uniform position inside each stratum.
// Dimension j draws from `rng.substream(j)`. Throws DomainError if M or d is 0.
SampleBatch lhs_normal(Eigen::Index count, Eigen::Index dim, const RandomStream& rng);

// M independent N(0, I_d) vectors through the same quantile transform as LHS.
SampleBatch srs_normal(Eigen::Index count, Eigen::Index dim, const RandomStream& rng);

SampleBatch sample_normal(SamplerKind kind, Eigen::Index count, Eigen::Index dim,
                          const RandomStream& rng);

// Scale every row to unit Euclidean norm. Throws DegenerateSampleError on a
// zero row.
SampleBatch normalize_rows(SampleBatch batch);

// normalize_rows(sample_normal(...)); on a zero row the batch is redrawn from
// the next sibling substream (at most 8 attempts).
SampleBatch draw_unit_batch(SamplerKind kind, Eigen::Index count, Eigen::Index dim,
                            const RandomStream& rng);

// Max over dimensions of the Kolmogorov-Smirnov distance between the column's
// empirical CDF and Phi. Requires M >= 2.
double batch_discrepancy(const SampleBatch& batch);

// Mean over dimensions of |column mean|.
double mean_abs_column_mean(const SampleBatch& batch);

// Checks the Latin property and within-stratum containment exactly. Returns
// false for non-LHS batches.
bool satisfies_latin_property(const SampleBatch& batch);

}  // namespace lhsba

#endif  // LHSBA_SAMPLER_HPP
