#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lel/certificate.hpp"

namespace lel {

/// One sweep result. status is "ok" for certified rows, otherwise the
/// refusal tag; refused rows carry no certificate.
struct SweepRow {
  int dim = 0;
  Rational p;
  std::string status;
  std::optional<NonexistenceCertificate> cert;
};

struct CertificateTable {
  std::vector<SweepRow> rows;

  /// Header: N,p,q,ell,case,theta,theta1,theta2,a,b,status
  /// Rationals are printed exactly ("9/4"); refused rows leave the numeric
  /// columns empty.
  std::string to_csv() const;
};

/// samples exact rationals strictly inside (N/(N-2), p_S). Needs dim >= 3.
std::vector<Rational> admissible_p_grid(int dim, int samples);

/// One row per (N, p), N ascending then p ascending, by construction of the
/// input order. Rows are evaluated in parallel (LEL_THREADS caps the worker
/// count, default hardware concurrency); output order is deterministic.
CertificateTable sweep(const std::vector<std::pair<int, Rational>>& points, unsigned threads = 0);

/// Convenience form: for each dim, `samples` grid points via admissible_p_grid.
CertificateTable sweep(const std::vector<int>& dims, int samples, unsigned threads = 0);

/// LEL_THREADS override, else `requested`, else hardware concurrency.
unsigned resolve_thread_count(unsigned requested, std::size_t work_items);

}  // namespace lel
