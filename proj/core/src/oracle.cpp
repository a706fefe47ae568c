#include "springer/oracle.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "springer/bundle.hpp"
#include "springer/error.hpp"

namespace springer {

namespace {

struct Context {
  const EnumerationTask& task;
  Matrix x, gram;
  std::size_t n, top;
  std::atomic<std::uint64_t>& count;
  const std::function<void(const Flag&)>& visit;
};

// projective points of F_p^d as coefficient lists
std::vector<std::vector<Scalar>> projective_points(const Field& f, std::size_t d) {
  std::vector<std::vector<Scalar>> out;
  std::uint32_t p = f.p();
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::size_t tail = d - lead - 1;
    std::vector<std::uint32_t> digits(tail, 0);
    while (true) {
      std::vector<Scalar> c(d, Scalar(f));
      c[lead] = Scalar::one(f);
      for (std::size_t t = 0; t < tail; ++t) c[lead + 1 + t] = Scalar(f, static_cast<long>(digits[t]));
      out.push_back(std::move(c));
      std::size_t pos = 0;
      while (pos < tail && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == tail) break;
    }
  }
  return out;
}

// next spaces F_{i+1} above prev
std::vector<Subspace> successors(const Context& cx, const Subspace& prev) {
  const Field& f = cx.task.field;
  Subspace w = preimage(cx.x, prev);
  if (cx.task.typeD) w = subspace_intersect(w, orth_complement(prev, cx.gram));
  std::vector<Vector> comp = complement_basis(w, prev);
  std::vector<Subspace> out;
  for (const auto& c : projective_points(f, comp.size())) {
    Vector v = zero_vector(f, cx.n);
    for (std::size_t j = 0; j < comp.size(); ++j)
      for (std::size_t t = 0; t < cx.n; ++t) v[t] += c[j] * comp[j][t];
    if (cx.task.typeD && !is_isotropic_vector(v, cx.gram)) continue;
    out.push_back(subspace_sum(prev, Subspace::span(f, cx.n, {v})));
  }
  return out;
}

void emit(const Context& cx, std::vector<Subspace>& chain) {
  if (++cx.count > cx.task.max_count) throw CapExceeded("more than " + std::to_string(cx.task.max_count) + " flags");
  const Field& f = cx.task.field;
  if (cx.task.typeD) {
    std::vector<Subspace> lower(chain.begin() + 1, chain.end());
    cx.visit(complete_isotropic(lower, cx.gram));
  } else {
    std::vector<Subspace> all = chain;
    all.push_back(Subspace::full(f, cx.n));
    cx.visit(Flag(std::move(all)));
  }
}

void recurse(const Context& cx, std::vector<Subspace>& chain) {
  if (chain.size() - 1 == cx.top) {
    emit(cx, chain);
    return;
  }
  for (auto& next : successors(cx, chain.back())) {
    chain.push_back(std::move(next));
    recurse(cx, chain);
    chain.pop_back();
  }
}

}  // namespace

std::uint64_t enumerate_stable_flags(const EnumerationTask& task, const std::function<void(const Flag&)>& visit) {
  const Field& f = task.field;
  if (!f.is_prime()) throw BadParameters("enumeration needs a prime field, got " + f.name());
  const Shape& s = task.lambda;
  if (task.typeD) require_typeD_partition(s.n(), s.k());
  std::atomic<std::uint64_t> count{0};
  std::size_t n = s.n();
  Matrix gram = task.typeD ? gram_matrix(f, s) : Matrix(f, n, n);
  Context cx{task, standard_nilpotent(f, s), gram, n, task.typeD ? n / 2 : n - 1, count, visit};
  if (n == 0) return 0;
  std::vector<Subspace> chain{Subspace::zero(f, n)};
  if (cx.top == 0) {
    emit(cx, chain);
    return count;
  }
  // partition by F_1
  std::vector<Subspace> firsts = successors(cx, chain.back());
  unsigned threads = task.threads ? task.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(firsts.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < firsts.size(); i = next++) {
        std::vector<Subspace> local{chain.front(), firsts[i]};
        recurse(cx, local);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = firsts.size();
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return count;
}

std::vector<Flag> collect_stable_flags(const EnumerationTask& task) {
  std::vector<Flag> out;
  std::mutex mu;
  enumerate_stable_flags(task, [&](const Flag& fl) {
    std::lock_guard lock(mu);
    out.push_back(fl);
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool DecompositionReport::no_containment() const {
  for (std::size_t a = 0; a < per_component.size(); ++a)
    for (std::size_t b = a + 1; b < per_component.size(); ++b) {
      auto it = overlaps.find({a, b});
      std::uint64_t ov = it == overlaps.end() ? 0 : it->second;
      if (ov >= std::min(per_component[a], per_component[b])) return false;
    }
  return true;
}

namespace {

template <class Member>
DecompositionReport decompose_impl(const EnumerationTask& task, std::size_t count, const std::function<std::string(std::size_t)>& name,
                                   const Member& member, std::size_t keep) {
  DecompositionReport rep;
  for (std::size_t i = 0; i < count; ++i) rep.components.push_back(name(i));
  rep.per_component.assign(count, 0);
  std::mutex mu;
  rep.total_flags = enumerate_stable_flags(task, [&](const Flag& fl) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < count; ++i)
      if (member(i, fl)) hits.push_back(i);
    std::lock_guard lock(mu);
    for (auto i : hits) ++rep.per_component[i];
    for (std::size_t a = 0; a < hits.size(); ++a)
      for (std::size_t b = a + 1; b < hits.size(); ++b) ++rep.overlaps[{hits[a], hits[b]}];
    if (hits.empty()) {
      ++rep.uncovered_count;
      if (rep.uncovered.size() < keep) rep.uncovered.push_back(fl);
    }
  });
  std::sort(rep.uncovered.begin(), rep.uncovered.end());
  return rep;
}

}  // namespace

DecompositionReport decompose(const EnumerationTask& task, const std::vector<CupDiagram>& diagrams, std::size_t keep) {
  if (task.typeD) throw WrongCase("type A diagrams with a type D task");
  return decompose_impl(
      task, diagrams.size(), [&](std::size_t i) { return serialize_diagram(diagrams[i]); },
      [&](std::size_t i, const Flag& fl) { return in_K_a(fl, task.lambda, diagrams[i]); }, keep);
}

DecompositionReport decompose(const EnumerationTask& task, const std::vector<MarkedCupDiagram>& diagrams, std::size_t keep) {
  if (!task.typeD) throw WrongCase("type D diagrams with a type A task");
  return decompose_impl(
      task, diagrams.size(), [&](std::size_t i) { return serialize_diagram(diagrams[i]); },
      [&](std::size_t i, const Flag& fl) { return in_K_marked(fl, task.lambda, diagrams[i]); }, keep);
}

std::uint64_t count_component(const CupDiagram& a, const Field& f) {
  EnumerationTask task{Shape::from_nk(a.n(), a.k()), f, false};
  std::atomic<std::uint64_t> c{0};
  enumerate_stable_flags(task, [&](const Flag& fl) {
    if (in_K_a(fl, task.lambda, a)) ++c;
  });
  return c;
}

std::uint64_t count_component(const MarkedCupDiagram& adot, const Field& f) {
  EnumerationTask task{shape_of(adot), f, true};
  std::atomic<std::uint64_t> c{0};
  enumerate_stable_flags(task, [&](const Flag& fl) {
    if (in_K_marked(fl, task.lambda, adot)) ++c;
  });
  return c;
}

}  // namespace springer
