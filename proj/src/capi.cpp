#include "kronlap.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "kronlap/config.hpp"
#include "kronlap/kron.hpp"
#include "kronlap/reference.hpp"
#include "kronlap/rng.hpp"
#include "kronlap/sobolev.hpp"
#include "kronlap/spectral.hpp"
#include "kronlap/verify.hpp"

using kronlap::Complex;
using kronlap::TensorField;

struct kronlap_problem_s {
  kronlap::ProblemConfig config;
  kronlap::GridPtr grid;
  std::optional<kronlap::ProductEigensystem> eigensystem;

  const kronlap::ProductEigensystem& spectral() {
    if (!eigensystem)
      eigensystem = kronlap::ProductEigensystem::build(grid, config.shift);
    return *eigensystem;
  }
};

namespace {

thread_local std::string g_last_error;

kronlap_status to_status(const kronlap::Error& e) {
  switch (e.code()) {
    case kronlap::ErrorCode::Argument: return KRONLAP_ERR_ARGUMENT;
    case kronlap::ErrorCode::Config: return KRONLAP_ERR_CONFIG;
    case kronlap::ErrorCode::SizeCap: return KRONLAP_ERR_CAP;
    case kronlap::ErrorCode::Singular: return KRONLAP_ERR_SINGULAR;
    case kronlap::ErrorCode::Eigen: return KRONLAP_ERR_EIGEN;
    case kronlap::ErrorCode::Io: return KRONLAP_ERR_IO;
  }
  return KRONLAP_ERR_INTERNAL;
}

template <typename Fn>
kronlap_status guarded(Fn&& fn) {
  try {
    fn();
    return KRONLAP_OK;
  } catch (const kronlap::Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KRONLAP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return KRONLAP_ERR_INTERNAL;
  }
}

kronlap_status arg_error(const char* what) {
  g_last_error = what;
  return KRONLAP_ERR_ARGUMENT;
}

TensorField field_from(const kronlap_problem* p, const double* data) {
  TensorField f(p->grid);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    f.data[i] = Complex(data[2 * i], data[2 * i + 1]);
  return f;
}

void field_to(const TensorField& f, double* out) {
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    out[2 * i] = f.data[i].real();
    out[2 * i + 1] = f.data[i].imag();
  }
}

}  // namespace

extern "C" {

const char* kronlap_status_string(kronlap_status status) {
  switch (status) {
    case KRONLAP_OK: return "ok";
    case KRONLAP_ERR_ARGUMENT: return "invalid argument";
    case KRONLAP_ERR_CONFIG: return "config error";
    case KRONLAP_ERR_CAP: return "size cap exceeded";
    case KRONLAP_ERR_SINGULAR: return "singular solve";
    case KRONLAP_ERR_EIGEN: return "eigensolver failure";
    case KRONLAP_ERR_IO: return "I/O error";
    case KRONLAP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* kronlap_last_error(void) { return g_last_error.c_str(); }

kronlap_status kronlap_problem_from_string(const char* text,
                                           kronlap_problem** out) {
  if (!text || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<kronlap_problem_s>();
    p->config = kronlap::parse_config(text);
    p->grid = kronlap::make_grid(p->config);
    *out = p.release();
  });
}

kronlap_status kronlap_problem_from_file(const char* path,
                                         kronlap_problem** out) {
  if (!path || !out) return arg_error("null argument");
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<kronlap_problem_s>();
    p->config = kronlap::parse_config_file(path);
    p->grid = kronlap::make_grid(p->config);
    *out = p.release();
  });
}

kronlap_status kronlap_problem_refine(const kronlap_problem* problem,
                                      int32_t scale, kronlap_problem** out) {
  if (!problem || !out) return arg_error("null argument");
  if (scale < 1) return arg_error("refinement scale must be positive");
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<kronlap_problem_s>();
    p->config = problem->config;
    for (kronlap::FactorSpec& s : p->config.factors) {
      const long scaled = static_cast<long>(s.n) * scale;
      if (scaled > kronlap::kMaxFactorPoints)
        kronlap::fail(kronlap::ErrorCode::SizeCap,
                      "refined factor exceeds the point cap");
      s.n = static_cast<int>(scaled);
    }
    p->grid = kronlap::make_grid(p->config);
    *out = p.release();
  });
}

void kronlap_problem_free(kronlap_problem* problem) { delete problem; }

int32_t kronlap_problem_factor_count(const kronlap_problem* problem) {
  return problem ? problem->grid->rank() : 0;
}

int64_t kronlap_problem_total_points(const kronlap_problem* problem) {
  return problem ? static_cast<int64_t>(problem->grid->total) : 0;
}

int64_t kronlap_problem_factor_points(const kronlap_problem* problem,
                                      int32_t factor) {
  if (!problem || factor < 0 || factor >= problem->grid->rank()) return 0;
  return static_cast<int64_t>(problem->grid->shape[factor]);
}

double kronlap_problem_mesh_width(const kronlap_problem* problem,
                                  int32_t factor) {
  if (!problem || factor < 0 || factor >= problem->grid->rank()) return 0.0;
  return problem->grid->factors[factor].h;
}

double kronlap_problem_shift(const kronlap_problem* problem) {
  return problem ? problem->config.shift : 0.0;
}

kronlap_status kronlap_apply(kronlap_problem* problem, const double* in,
                             double* out) {
  if (!problem || !in || !out) return arg_error("null argument");
  return guarded([&] {
    kronlap::KroneckerLaplacian s{problem->grid, problem->config.shift};
    field_to(s.apply(field_from(problem, in)), out);
  });
}

kronlap_status kronlap_solve(kronlap_problem* problem, const double* rhs,
                             int32_t zero_kernel_modes, double* out) {
  if (!problem || !rhs || !out) return arg_error("null argument");
  return guarded([&] {
    kronlap::SolveOptions opts;
    opts.zero_kernel_modes = zero_kernel_modes != 0;
    field_to(problem->spectral().solve(field_from(problem, rhs), opts), out);
  });
}

kronlap_status kronlap_heat(kronlap_problem* problem, double t,
                            const double* in, double* out) {
  if (!problem || !in || !out) return arg_error("null argument");
  return guarded([&] {
    field_to(problem->spectral().heat(field_from(problem, in), t), out);
  });
}

kronlap_status kronlap_spectrum(kronlap_problem* problem, int64_t count,
                                double* values, int64_t* indices) {
  if (!problem || !values || count < 0) return arg_error("bad argument");
  return guarded([&] {
    const auto entries =
        problem->spectral().enumerate_spectrum(static_cast<std::size_t>(count));
    const int rank = problem->grid->rank();
    for (std::size_t r = 0; r < entries.size(); ++r) {
      values[r] = entries[r].value;
      if (indices)
        for (int j = 0; j < rank; ++j)
          indices[r * rank + j] =
              static_cast<int64_t>(entries[r].indices[j]);
    }
  });
}

kronlap_status kronlap_eigenfunction(kronlap_problem* problem,
                                     const int64_t* multi_index, double* out) {
  if (!problem || !multi_index || !out) return arg_error("null argument");
  return guarded([&] {
    kronlap::SpectrumEntry entry;
    entry.indices.resize(problem->grid->rank());
    for (int j = 0; j < problem->grid->rank(); ++j) {
      if (multi_index[j] < 0)
        kronlap::fail(kronlap::ErrorCode::Argument,
                      "multi-index entries must be nonnegative");
      entry.indices[j] = static_cast<std::size_t>(multi_index[j]);
    }
    field_to(problem->spectral().eigenfunction(entry), out);
  });
}

kronlap_status kronlap_lowest_nontrivial_index(kronlap_problem* problem,
                                               int32_t factor,
                                               int64_t* index) {
  if (!problem || !index) return arg_error("null argument");
  if (factor < 0 || factor >= problem->grid->rank())
    return arg_error("factor index out of range");
  return guarded([&] {
    const auto& es = problem->spectral().factor_system(factor);
    *index = static_cast<int64_t>(kronlap::lowest_nontrivial_index(
        es.eigenvalues, std::abs(es.eigenvalues.back())));
  });
}

kronlap_status kronlap_inner(kronlap_problem* problem, const double* f,
                             const double* g, double* re, double* im) {
  if (!problem || !f || !g || !re || !im) return arg_error("null argument");
  return guarded([&] {
    const Complex v =
        kronlap::inner(field_from(problem, f), field_from(problem, g));
    *re = v.real();
    *im = v.imag();
  });
}

kronlap_status kronlap_form_value(kronlap_problem* problem, const double* f,
                                  const double* g, double* re, double* im) {
  if (!problem || !f || !g || !re || !im) return arg_error("null argument");
  return guarded([&] {
    const Complex v =
        kronlap::form_value(field_from(problem, f), field_from(problem, g));
    *re = v.real();
    *im = v.imag();
  });
}

kronlap_status kronlap_h2_seminorm(kronlap_problem* problem, const double* f,
                                   double* value) {
  if (!problem || !f || !value) return arg_error("null argument");
  return guarded([&] {
    *value = kronlap::h2_seminorm(field_from(problem, f));
  });
}

kronlap_status kronlap_random_field(kronlap_problem* problem, uint64_t seed,
                                    double* out) {
  if (!problem || !out) return arg_error("null argument");
  return guarded([&] {
    field_to(kronlap::gaussian_field(problem->grid, seed), out);
  });
}

kronlap_status kronlap_reference_field(kronlap_problem* problem, double* field,
                                       double* eigenvalue, double* norm2,
                                       double* h2_value) {
  if (!problem) return arg_error("null argument");
  return guarded([&] {
    const kronlap::ProductReference ref =
        kronlap::product_reference(problem->grid);
    if (field) field_to(ref.field, field);
    if (eigenvalue) *eigenvalue = ref.eigenvalue;
    if (norm2) *norm2 = ref.norm2;
    if (h2_value) *h2_value = ref.h2_value;
  });
}

kronlap_status kronlap_verify(kronlap_problem* problem, double tol,
                              uint64_t seed, int32_t trials,
                              kronlap_verify_report* report) {
  if (!problem || !report) return arg_error("null argument");
  return guarded([&] {
    const kronlap::VerificationSummary summary =
        kronlap::run_verification(problem->grid, tol, seed, trials);
    std::memset(report, 0, sizeof(*report));
    report->passed = summary.passed ? 1 : 0;
    report->check_count = 0;
    for (const kronlap::VerificationCheck& c : summary.checks) {
      if (report->check_count >= KRONLAP_VERIFY_MAX_CHECKS) break;
      kronlap_verify_check& dst = report->checks[report->check_count++];
      std::strncpy(dst.name, c.name.c_str(), KRONLAP_VERIFY_NAME_LEN - 1);
      dst.trials = static_cast<int64_t>(c.trials);
      dst.max_err = c.max_err;
      dst.tolerance = c.tolerance;
      dst.passed = c.passed ? 1 : 0;
    }
  });
}

}  // extern "C"
