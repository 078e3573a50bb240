// Compares the serial reference sweeps against the OpenMP kernels on
// synthetic workloads: hypercube boundary counting, normal-form filtering,
// and knowledge-matrix filling.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "folspace/geometry.hpp"
#include "folspace/uncertainty.hpp"
#include "folspace/vectorspace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace folspace;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Rng {
  uint64_t state = 0x243f6a8885a308d3ull;
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  int range(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

FormulaPtr random_sentence(Rng& rng, const Vocabulary& vocab, int rank_budget,
                           std::vector<std::string>& bound, int depth) {
  int pick = rng.range(8);
  if (depth <= 0 || (bound.empty() && rank_budget == 0)) pick = bound.empty() ? 7 : 6;
  if (bound.empty() && pick >= 3) pick = rng.range(3);
  if (pick < 3 && rank_budget > 0) {
    std::string v = "v" + std::to_string(bound.size() + 1);
    bound.push_back(v);
    FormulaPtr body = random_sentence(rng, vocab, rank_budget - 1, bound, depth - 1);
    bound.pop_back();
    return pick % 2 ? Formula::exists(v, body) : Formula::forall(v, body);
  }
  if (pick == 3)
    return Formula::land(random_sentence(rng, vocab, rank_budget, bound, depth - 1),
                         random_sentence(rng, vocab, rank_budget, bound, depth - 1));
  if (pick == 4)
    return Formula::lor(random_sentence(rng, vocab, rank_budget, bound, depth - 1),
                        random_sentence(rng, vocab, rank_budget, bound, depth - 1));
  if (pick == 5)
    return Formula::lnot(random_sentence(rng, vocab, rank_budget, bound, depth - 1));
  if (!bound.empty()) {
    int p = rng.range(static_cast<int>(vocab.size()));
    std::vector<std::string> args;
    for (int i = 0; i < vocab.arity(p); ++i)
      args.push_back(bound[rng.range(static_cast<int>(bound.size()))]);
    return Formula::atom(p, std::move(args));
  }
  return Formula::top();
}

void bench_influence(int threads) {
  const int dim = 20;
  Rng rng;
  Hypercube cube;
  cube.dimension = dim;
  cube.labels.resize(uint64_t(1) << dim);
  for (auto& l : cube.labels) l = rng.range(3) ? -1 : 1;

  auto t0 = Clock::now();
  uint64_t serial_total = 0;
  for (int i = 0; i < dim; ++i) serial_total += boundary_count_serial(cube, i);
  double serial = seconds_since(t0);

  t0 = Clock::now();
  uint64_t parallel_total = 0;
  for (int i = 0; i < dim; ++i) parallel_total += boundary_count(cube, i, threads);
  double parallel = seconds_since(t0);

  std::printf("influence  dim=%d        serial %.3fs  parallel(%d) %.3fs  speedup %.2fx  %s\n",
              dim, serial, threads, parallel, serial / parallel,
              serial_total == parallel_total ? "agree" : "MISMATCH");
}

void bench_dnf(int threads) {
  Vocabulary vocab({{"P", 1}, {"Q", 1}, {"R", 1}, {"S", 1}});
  Universe serial_u(vocab);
  Universe parallel_u(vocab);
  parallel_u.set_threads(threads);
  Rng rng;
  std::vector<FormulaPtr> sentences;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> bound;
    sentences.push_back(random_sentence(rng, vocab, 1, bound, 6));
  }
  serial_u.warm(1);
  parallel_u.warm(1);

  auto t0 = Clock::now();
  size_t serial_total = 0;
  for (const auto& f : sentences) serial_total += serial_u.dnf_serial(f, 1).size();
  double serial = seconds_since(t0);

  t0 = Clock::now();
  size_t parallel_total = 0;
  for (const auto& f : sentences) parallel_total += parallel_u.dnf(f, 1).size();
  double parallel = seconds_since(t0);

  std::printf("dnf        space=65536   serial %.3fs  parallel(%d) %.3fs  speedup %.2fx  %s\n",
              serial, threads, parallel, serial / parallel,
              serial_total == parallel_total ? "agree" : "MISMATCH");
}

void bench_knowledge(int threads) {
  Vocabulary vocab({{"P", 1}, {"Q", 1}});
  Universe u(vocab);
  u.set_threads(threads);
  Rng rng;
  std::vector<FormulaPtr> conjectures;
  for (int i = 0; i < 28; ++i) {
    std::vector<std::string> bound;
    conjectures.push_back(random_sentence(rng, vocab, 1, bound, 5));
  }
  std::vector<FiniteModel> models = enumerate_models(vocab, 2);
  RefuterConfig ref;
  ref.depth = 0;

  auto t0 = Clock::now();
  KnowledgeMatrix serial_k =
      build_knowledge_serial(u, {}, conjectures, models, BigRat(1), ref, 1);
  double serial = seconds_since(t0);

  t0 = Clock::now();
  KnowledgeMatrix parallel_k = build_knowledge(u, {}, conjectures, models, BigRat(1), ref, 1);
  double parallel = seconds_since(t0);

  std::printf("knowledge  29x29 matrix  serial %.3fs  parallel(%d) %.3fs  speedup %.2fx  %s\n",
              serial, threads, parallel, serial / parallel,
              serial_k.entries == parallel_k.entries ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 2;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (argc > 1) threads = std::atoi(argv[1]);
  if (threads < 1) threads = 1;
  std::printf("comparing serial reference kernels against %d-thread sweeps\n", threads);
  bench_influence(threads);
  bench_dnf(threads);
  bench_knowledge(threads);
  return 0;
}
