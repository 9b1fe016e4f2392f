#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlc/candidates.hpp"
#include "mlc/instance.hpp"

namespace mlc {

/// Positions 1..5 and one bucket for everything past 5.
inline constexpr int kPositionBuckets = 6;

int position_bucket(int position);  // 1..5 -> 0..4, >5 -> 5
const char* bucket_label(int bucket) noexcept;

struct PositionCounts {
  std::uint64_t p = 0;   // observations whose edge is optimal
  std::uint64_t n = 0;   // observations whose edge is not optimal
  std::uint64_t tp = 0;  // predicted and optimal
  std::uint64_t fp = 0;  // predicted and not optimal

  double tpr() const;
  double fpr() const;
  /// TPR / FPR; +inf when FPR is zero and TPR is not, 0 when both are.
  double plr() const;
  double accuracy() const;
  PositionCounts& operator+=(const PositionCounts& o);
};

struct PositionStats {
  std::array<PositionCounts, kPositionBuckets> buckets{};
  PositionStats& operator+=(const PositionStats& o);
};

/// One observation per (vertex i, position p) pair: the edge to the p-th
/// entry of CL[i]. A prediction is membership in `predicted`, usually the
/// final tour of a constructor.
PositionStats position_metrics(const CandidateLists& cls, std::span<const Vertex> predicted,
                               std::span<const Vertex> optimal);

/// How often the optimal tour uses the edge at each CL position.
struct PositionPdf {
  std::vector<double> rate;  // rate[p-1]: fraction of CL[i] whose p-th edge is optimal
  std::vector<double> pdf;   // pdf[p-1]: share of optimal edge ends found at position p
  std::uint64_t vertices = 0;

  /// pdf mass of positions 1..upto.
  double coverage(int upto) const;
};

/// Accumulates over (instance, optimal order) pairs using complete candidate
/// lists, so every optimal edge end has a position.
class PositionPdfBuilder {
 public:
  void add(const Instance& inst, std::span<const Vertex> optimal);
  PositionPdf result() const;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t vertices_ = 0;
};

void write_position_csv(std::ostream& out, std::span<const std::pair<std::string, PositionStats>> rows);

}  // namespace mlc
