// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ballfield/axioms.hpp"
#include "ballfield/continuity.hpp"
#include "ballfield/covariance.hpp"
#include "ballfield/gaussian.hpp"
#include "ballfield/geometry.hpp"
#include "ballfield/kernels.hpp"

namespace ballfield::io {

/// Provenance stamped into every output (JSON fields / the CSV params slot).
struct Provenance
{
    std::string tool_version;
    std::string config_hash;
};

// Ball configurations: CSV with header dim,t,x1,...,x{d-1},radius.
void write_balls_csv(const std::filesystem::path& path, std::span<const Ball> balls);
std::vector<Ball> read_balls_csv(const std::filesystem::path& path);

// Kernel matrices: CSV (row-major, header n,d,kernel,params) plus a JSON
// sidecar recording tolerances and achieved error estimates.
void write_matrix_csv(const std::filesystem::path& path, const CovarianceMatrix& m,
                      const std::string& kernel, const std::string& params);
CovarianceMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_sidecar(const std::filesystem::path& path, const CovarianceMatrix& m,
                          const KernelSpec& spec, const QuadratureConfig& cfg,
                          const Provenance& prov);

// Sample batches: fixed 64-byte header (magic, version, n, d, n_samples,
// seed), little-endian float64 payload, row-major; JSON sidecar with the
// kernel spec and jitter.
void write_batch(const std::filesystem::path& path, const SampleBatch& batch);
SampleBatch read_batch(const std::filesystem::path& path);
void write_batch_sidecar(const std::filesystem::path& path, const SampleBatch& batch,
                         const Provenance& prov);
void write_batch_csv(const std::filesystem::path& path, const SampleBatch& batch);

nlohmann::json rp_report_json(const RPReport& report, const Provenance& prov);
nlohmann::json entropy_report_json(const EntropyReport& report, const Provenance& prov);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Serialize a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace ballfield::io
