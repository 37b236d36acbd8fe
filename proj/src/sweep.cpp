#include "lel/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lel {

std::vector<Rational> admissible_p_grid(int dim, int samples) {
  if (dim < 3) throw std::domain_error("admissible_p_grid needs dim >= 3 (the window is unbounded for dim 2)");
  if (samples < 0) throw std::domain_error("samples must be >= 0");
  const Rational lo(dim, dim - 2);
  const Rational hi(dim + 2, dim - 2);
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(samples));
  const Rational width = hi - lo;
  for (int i = 1; i <= samples; ++i) {
    grid.push_back(lo + width * Rational(i, samples + 1));
  }
  return grid;
}

unsigned resolve_thread_count(unsigned requested, std::size_t work_items) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("LEL_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) n = static_cast<unsigned>(parsed);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  if (work_items > 0 && n > work_items) n = static_cast<unsigned>(work_items);
  return std::max(1u, n);
}

CertificateTable sweep(const std::vector<std::pair<int, Rational>>& points, unsigned threads) {
  CertificateTable table;
  table.rows.resize(points.size());

  auto evaluate = [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    row.dim = points[i].first;
    row.p = points[i].second;
    try {
      row.cert = certify(ProblemParams(row.dim, row.p));
      row.status = "ok";
    } catch (const refusal_error& e) {
      row.status = e.tag();
    }
  };

  const unsigned workers = resolve_thread_count(threads, points.size());
  if (workers <= 1 || points.size() <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i);
    return table;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= points.size()) return;
        try {
          evaluate(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!first_failure) first_failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_failure) std::rethrow_exception(first_failure);
  return table;
}

CertificateTable sweep(const std::vector<int>& dims, int samples, unsigned threads) {
  std::vector<std::pair<int, Rational>> points;
  points.reserve(dims.size() * static_cast<std::size_t>(samples));
  for (int dim : dims) {
    for (Rational& p : admissible_p_grid(dim, samples)) points.emplace_back(dim, std::move(p));
  }
  return sweep(points, threads);
}

std::string CertificateTable::to_csv() const {
  std::ostringstream out;
  out << "N,p,q,ell,case,theta,theta1,theta2,a,b,status\n";
  for (const SweepRow& row : rows) {
    out << row.dim << ',' << row.p.str() << ',';
    if (row.cert) {
      const NonexistenceCertificate& c = *row.cert;
      out << c.qsel.q.str() << ',' << c.qsel.ell.str() << ',' << to_string(c.step1.case_tag) << ','
          << (c.step1.theta ? c.step1.theta->str() : "") << ',' << c.step2.theta1.str() << ','
          << c.step2.theta2.str() << ',' << c.a.str() << ',' << c.b.str() << ',';
    } else {
      out << ",,,,,,,,";
    }
    out << row.status << '\n';
  }
  return out.str();
}

}  // namespace lel
