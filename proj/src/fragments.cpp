#include "mlc/fragments.hpp"

#include <string>

#include "mlc/error.hpp"

namespace mlc {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kOk:
      return "ok";
    case Verdict::kDegreeViolation:
      return "degree";
    case Verdict::kInnerLoop:
      return "inner-loop";
  }
  return "?";
}

PartialSolution::PartialSolution(int n, TrackerMode mode)
    : n_(n),
      mode_(mode),
      degree_(n, 0),
      mate_(n, -1),
      adj_(n, {-1, -1}),
      scan_end_(mode == TrackerMode::kFragmentScan ? n : 0, -1),
      scan_epoch_(mode == TrackerMode::kFragmentScan ? n : 0, -1) {
  if (n < 3) throw ContractError("partial solution needs n >= 3");
  edges_.reserve(n);
}

Vertex PartialSolution::scan_to_end(Vertex from) const {
  const int t = epoch();
  if (scan_epoch_[from] == t) {
    ++probes_;
    return scan_end_[from];
  }
  Vertex prev = -1;
  Vertex cur = from;
  for (;;) {
    const auto& a = adj_[cur];
    const Vertex next = a[0] != prev ? a[0] : a[1];
    ++probes_;
    if (next < 0) break;
    prev = cur;
    cur = next;
    if (degree_[cur] == 1) break;
  }
  scan_end_[from] = cur;
  scan_epoch_[from] = t;
  scan_end_[cur] = from;
  scan_epoch_[cur] = t;
  return cur;
}

bool PartialSolution::same_fragment(Vertex i, Vertex j) const {
  if (mode_ == TrackerMode::kEndpointMap) {
    ++probes_;
    return mate_[i] == j;
  }
  return scan_to_end(i) == j;
}

Verdict PartialSolution::check(Vertex i, Vertex j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw ContractError("vertex out of range");
  if (i == j) throw ContractError("self edge (" + std::to_string(i) + ")");
  if (degree_[i] >= 2 || degree_[j] >= 2) return Verdict::kDegreeViolation;
  if (degree_[i] == 1 && degree_[j] == 1 && same_fragment(i, j)) {
    return epoch() == n_ - 1 ? Verdict::kOk : Verdict::kInnerLoop;
  }
  return Verdict::kOk;
}

void PartialSolution::accept(Vertex i, Vertex j) {
  if (check(i, j) != Verdict::kOk) {
    throw ContractError("accept_edge(" + std::to_string(i) + ", " + std::to_string(j) +
                        ") without an ok verdict");
  }
  if (epoch() == n_ - 1) {
    // Hamiltonian close: no endpoints remain.
    mate_[i] = mate_[j] = -1;
  } else {
    const Vertex end_i = degree_[i] == 0 ? i : mate_[i];
    const Vertex end_j = degree_[j] == 0 ? j : mate_[j];
    if (degree_[i] == 1) mate_[i] = -1;
    if (degree_[j] == 1) mate_[j] = -1;
    mate_[end_i] = end_j;
    mate_[end_j] = end_i;
  }
  adj_[i][degree_[i]++] = j;
  adj_[j][degree_[j]++] = i;
  edges_.emplace_back(i, j);
}

Verdict PartialSolution::try_accept(Vertex i, Vertex j) {
  const Verdict v = check(i, j);
  if (v == Verdict::kOk) accept(i, j);
  return v;
}

bool PartialSolution::has_edge(Vertex i, Vertex j) const {
  return adj_[i][0] == j || adj_[i][1] == j;
}

std::vector<Vertex> PartialSolution::free_vertices() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n_; ++v) {
    if (degree_[v] < 2) out.push_back(v);
  }
  return out;
}

int PartialSolution::fragment_count() const {
  if (complete()) return 1;
  int ends = 0;
  for (Vertex v = 0; v < n_; ++v) ends += degree_[v] == 1;
  return ends / 2;
}

std::vector<Vertex> PartialSolution::tour_order() const {
  if (!complete()) throw ContractError("tour_order on an incomplete solution");
  std::vector<Vertex> order;
  order.reserve(n_);
  Vertex prev = -1;
  Vertex cur = 0;
  for (int step = 0; step < n_; ++step) {
    order.push_back(cur);
    const auto& a = adj_[cur];
    const Vertex next = a[0] != prev ? a[0] : a[1];
    prev = cur;
    cur = next;
  }
  if (cur != 0) throw InternalError("complete solution is not a single cycle");
  return order;
}

}  // namespace mlc
