#include "mlc/statistics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_set>

#include "mlc/error.hpp"

namespace mlc {
namespace {

std::uint64_t key(Vertex a, Vertex b) {
  const Edge e(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

std::unordered_set<std::uint64_t> edge_set(std::span<const Vertex> order) {
  std::unordered_set<std::uint64_t> s;
  for (const Edge& e : tour_edges(order)) s.insert(key(e.u, e.v));
  return s;
}

double ratio(std::uint64_t a, std::uint64_t b) {
  return b ? static_cast<double>(a) / static_cast<double>(b) : 0.0;
}

}  // namespace

int position_bucket(int position) {
  if (position < 1) throw ContractError("positions are 1-based");
  return position > 5 ? 5 : position - 1;
}

const char* bucket_label(int bucket) noexcept {
  static const char* const labels[] = {"1", "2", "3", "4", "5", ">5"};
  return bucket >= 0 && bucket < kPositionBuckets ? labels[bucket] : "?";
}

double PositionCounts::tpr() const { return ratio(tp, p); }
double PositionCounts::fpr() const { return ratio(fp, n); }

double PositionCounts::plr() const {
  const double t = tpr();
  const double f = fpr();
  if (f == 0.0) return t == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return t / f;
}

double PositionCounts::accuracy() const {
  const std::uint64_t tn = n - fp;
  return ratio(tp + tn, p + n);
}

PositionCounts& PositionCounts::operator+=(const PositionCounts& o) {
  p += o.p;
  n += o.n;
  tp += o.tp;
  fp += o.fp;
  return *this;
}

PositionStats& PositionStats::operator+=(const PositionStats& o) {
  for (int b = 0; b < kPositionBuckets; ++b) buckets[b] += o.buckets[b];
  return *this;
}

PositionStats position_metrics(const CandidateLists& cls, std::span<const Vertex> predicted,
                               std::span<const Vertex> optimal) {
  const int n = cls.size();
  if (!is_permutation(optimal, n)) throw ContractError("optimal tour is not a permutation");
  if (!is_permutation(predicted, n)) throw ContractError("predicted tour is not a permutation");
  const auto opt = edge_set(optimal);
  const auto pred = edge_set(predicted);
  PositionStats stats;
  for (Vertex i = 0; i < n; ++i) {
    const auto list = cls.of(i);
    for (std::size_t p = 0; p < list.size(); ++p) {
      const auto k = key(i, list[p].vertex);
      auto& c = stats.buckets[position_bucket(static_cast<int>(p) + 1)];
      const bool is_opt = opt.contains(k);
      const bool is_pred = pred.contains(k);
      if (is_opt) {
        ++c.p;
        c.tp += is_pred;
      } else {
        ++c.n;
        c.fp += is_pred;
      }
    }
  }
  return stats;
}

double PositionPdf::coverage(int upto) const {
  double s = 0;
  for (int p = 0; p < upto && p < static_cast<int>(pdf.size()); ++p) s += pdf[p];
  return s;
}

void PositionPdfBuilder::add(const Instance& inst, std::span<const Vertex> optimal) {
  const int n = inst.size();
  const auto cls = build_candidate_lists(inst, n - 1);
  if (!is_permutation(optimal, n)) throw ContractError("optimal tour is not a permutation");
  if (counts_.size() < static_cast<std::size_t>(n - 1)) counts_.resize(static_cast<std::size_t>(n - 1), 0);
  for (std::size_t t = 0; t < optimal.size(); ++t) {
    const Vertex a = optimal[t];
    const Vertex b = optimal[(t + 1) % optimal.size()];
    ++counts_[cls.position(a, b) - 1];
    ++counts_[cls.position(b, a) - 1];
  }
  vertices_ += static_cast<std::uint64_t>(n);
}

PositionPdf PositionPdfBuilder::result() const {
  PositionPdf out;
  out.vertices = vertices_;
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  for (auto c : counts_) {
    out.rate.push_back(ratio(c, vertices_));
    out.pdf.push_back(ratio(c, total));
  }
  return out;
}

void write_position_csv(std::ostream& out,
                        std::span<const std::pair<std::string, PositionStats>> rows) {
  out << "position,method,P,N,TP,FP,TPR,FPR,Acc,PLR\n";
  for (int b = 0; b < kPositionBuckets; ++b) {
    for (const auto& [method, stats] : rows) {
      const auto& c = stats.buckets[b];
      out << bucket_label(b) << ',' << method << ',' << c.p << ',' << c.n << ',' << c.tp << ','
          << c.fp << ',' << c.tpr() << ',' << c.fpr() << ',' << c.accuracy() << ',' << c.plr()
          << '\n';
    }
  }
}

}  // namespace mlc
