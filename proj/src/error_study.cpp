#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "borelab/error.hpp"
#include "borelab/pde.hpp"

namespace borelab::pde {

void fit_error_law(ErrorSeries& s, double initial_norm) {
  double num = 0.0;
  double den = 0.0;
  s.window_start = 0.0;
  s.window_end = 0.0;
  bool open = false;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i];
    if (t < 1.0) continue;
    if (!(s.y[i] < 0.1 * initial_norm)) break;
    const double x = s.epsilon * t;
    num += x * s.y[i];
    den += x * x;
    if (!open) s.window_start = t;
    open = true;
    s.window_end = t;
  }
  s.K = den > 0.0 ? num / den : 0.0;
}

ErrorStudy error_study(const RunConfig& base, const std::vector<double>& epsilons,
                       unsigned threads) {
  base.validate();
  if (epsilons.empty()) throw InvalidArgument("error study: the epsilon list is empty");
  for (double e : epsilons)
    if (!(e > 0.0)) throw InvalidArgument("error study: every epsilon must be > 0");
  if (base.system == System::ShallowWater)
    throw InvalidArgument("error study: requires a Peregrine system");

  const FieldPair initial = make_initial(base.ic, base.grid);
  check_cfl(base, initial);

  std::vector<RunConfig> runs;
  RunConfig reference = base;
  reference.system = System::PeregrineInviscid;
  reference.epsilon = 0.0;
  runs.push_back(reference);
  for (double e : epsilons) {
    RunConfig r = base;
    r.system = System::PeregrineDissipative;
    r.epsilon = e;
    runs.push_back(r);
  }

  std::vector<std::vector<FieldPair>> results(runs.size());
  std::vector<std::exception_ptr> failures(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < runs.size(); k = next++) {
      try {
        results[k] = evolve(runs[k], initial);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(runs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ErrorStudy study;
  study.initial_norm = state_norm(initial, base.grid);
  for (std::size_t k = 1; k < runs.size(); ++k) {
    ErrorSeries s;
    s.epsilon = runs[k].epsilon;
    for (std::size_t j = 0; j < results[k].size(); ++j) {
      s.times.push_back(results[k][j].t);
      s.y.push_back(error_norm(results[k][j], results[0][j], base.grid));
    }
    fit_error_law(s, study.initial_norm);
    study.series.push_back(std::move(s));
  }
  return study;
}

}  // namespace borelab::pde
