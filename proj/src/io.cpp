// Copyright (c) 2026 The ballfield authors
// SPDX-License-Identifier: Apache-2.0

#include "ballfield/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ballfield::io {

static_assert(std::endian::native == std::endian::little,
              "binary batch container assumes a little-endian host");

namespace {

constexpr char kBatchMagic[8] = {'B', 'F', 'L', 'D', 'S', 'M', 'P', '1'};
constexpr std::uint32_t kBatchVersion = 1;

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ','))
        out.push_back(field);
    return out;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {})
{
    std::ofstream f(path, mode | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return f;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {})
{
    std::ifstream f(path, mode);
    if (!f)
        throw std::runtime_error("cannot open for reading: " + path.string());
    return f;
}

nlohmann::json kernel_spec_json(const KernelSpec& spec)
{
    nlohmann::json j;
    j["name"] = spec.name();
    if (spec.family == KernelFamily::FreeField)
        j["mass"] = spec.mass;
    if (spec.family == KernelFamily::Spectral)
    {
        j["constant"] = spec.spectral.constant;
        j["lower_bound"] = spec.spectral.lower_bound;
        j["upper_bound"] = spec.spectral.upper_bound;
        j["tail_power"] = spec.spectral.tail_power;
        j["tail_amplitude"] = spec.spectral.tail_amplitude;
    }
    return j;
}

}  // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_balls_csv(const std::filesystem::path& path, std::span<const Ball> balls)
{
    if (balls.empty())
        throw std::invalid_argument("write_balls_csv: empty configuration");
    const int d = balls[0].dim();
    auto f = open_out(path);
    f << "dim,t";
    for (int i = 1; i < d; ++i)
        f << ",x" << i;
    f << ",radius\n";
    for (const Ball& b : balls)
    {
        f << d;
        for (int i = 0; i < d; ++i)
            f << ',' << format_double(b.center[i]);
        f << ',' << format_double(b.radius) << '\n';
    }
}

std::vector<Ball> read_balls_csv(const std::filesystem::path& path)
{
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("read_balls_csv: empty file " + path.string());
    std::vector<Ball> balls;
    while (std::getline(f, line))
    {
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() < 3)
            throw std::runtime_error("read_balls_csv: malformed row: " + line);
        const int d = std::stoi(fields[0]);
        if (static_cast<int>(fields.size()) != d + 2)
            throw std::runtime_error("read_balls_csv: row width does not match dim: " + line);
        Eigen::VectorXd c(d);
        for (int i = 0; i < d; ++i)
            c[i] = std::stod(fields[1 + i]);
        balls.emplace_back(std::move(c), std::stod(fields[d + 1]));
    }
    return balls;
}

void write_matrix_csv(const std::filesystem::path& path, const CovarianceMatrix& m,
                      const std::string& kernel, const std::string& params)
{
    auto f = open_out(path);
    f << "n,d,kernel,params\n";
    f << m.n << ',' << m.d << ',' << kernel << ',' << params << '\n';
    for (int i = 0; i < m.n; ++i)
    {
        for (int j = 0; j < m.n; ++j)
            f << (j ? "," : "") << format_double(m.entries(i, j));
        f << '\n';
    }
}

CovarianceMatrix read_matrix_csv(const std::filesystem::path& path)
{
    auto f = open_in(path);
    std::string line;
    std::getline(f, line);  // header
    if (!std::getline(f, line))
        throw std::runtime_error("read_matrix_csv: missing metadata row");
    const auto meta = split_csv_line(line);
    if (meta.size() < 4)
        throw std::runtime_error("read_matrix_csv: malformed metadata row");
    CovarianceMatrix m;
    m.n = std::stoi(meta[0]);
    m.d = std::stoi(meta[1]);
    m.entries.resize(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
    {
        if (!std::getline(f, line))
            throw std::runtime_error("read_matrix_csv: truncated matrix");
        const auto row = split_csv_line(line);
        if (static_cast<int>(row.size()) != m.n)
            throw std::runtime_error("read_matrix_csv: bad row width");
        for (int j = 0; j < m.n; ++j)
            m.entries(i, j) = std::stod(row[j]);
    }
    return m;
}

void write_matrix_sidecar(const std::filesystem::path& path, const CovarianceMatrix& m,
                          const KernelSpec& spec, const QuadratureConfig& cfg,
                          const Provenance& prov)
{
    nlohmann::json j;
    j["version"] = prov.tool_version;
    j["config_hash"] = prov.config_hash;
    j["kernel"] = kernel_spec_json(spec);
    j["n"] = m.n;
    j["d"] = m.d;
    j["quadrature"] = {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
    j["max_entry_error"] = m.max_entry_error;
    j["jitter"] = m.jitter;
    write_json(path, j);
}

void write_batch(const std::filesystem::path& path, const SampleBatch& batch)
{
    auto f = open_out(path, std::ios::binary);
    char header[64] = {};
    std::memcpy(header, kBatchMagic, 8);
    std::uint32_t version = kBatchVersion;
    std::uint32_t d = batch.balls.empty() ? 0 : static_cast<std::uint32_t>(batch.balls[0].dim());
    std::uint64_t n = static_cast<std::uint64_t>(batch.n());
    std::uint64_t m = static_cast<std::uint64_t>(batch.n_samples());
    std::uint64_t seed = batch.seed;
    std::memcpy(header + 8, &version, 4);
    std::memcpy(header + 12, &d, 4);
    std::memcpy(header + 16, &n, 8);
    std::memcpy(header + 24, &m, 8);
    std::memcpy(header + 32, &seed, 8);
    f.write(header, sizeof header);
    // row-major payload
    for (std::int64_t s = 0; s < batch.n_samples(); ++s)
        for (int i = 0; i < batch.n(); ++i)
        {
            const double v = batch.values(s, i);
            f.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
}

SampleBatch read_batch(const std::filesystem::path& path)
{
    auto f = open_in(path, std::ios::binary);
    char header[64];
    f.read(header, sizeof header);
    if (f.gcount() != sizeof header || std::memcmp(header, kBatchMagic, 8) != 0)
        throw std::runtime_error("read_batch: bad magic in " + path.string());
    std::uint32_t version, d;
    std::uint64_t n, m, seed;
    std::memcpy(&version, header + 8, 4);
    std::memcpy(&d, header + 12, 4);
    std::memcpy(&n, header + 16, 8);
    std::memcpy(&m, header + 24, 8);
    std::memcpy(&seed, header + 32, 8);
    if (version != kBatchVersion)
        throw std::runtime_error("read_batch: unsupported container version");

    SampleBatch batch;
    batch.seed = seed;
    batch.values.resize(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n));
    // balls are carried by the sidecar, not the container; keep placeholders
    batch.balls.assign(n, Ball{Eigen::VectorXd::Zero(std::max<std::uint32_t>(d, 1)), 1.0});
    for (std::uint64_t s = 0; s < m; ++s)
        for (std::uint64_t i = 0; i < n; ++i)
        {
            double v;
            f.read(reinterpret_cast<char*>(&v), sizeof v);
            if (!f)
                throw std::runtime_error("read_batch: truncated payload");
            batch.values(static_cast<std::int64_t>(s), static_cast<std::int64_t>(i)) = v;
        }
    return batch;
}

void write_batch_sidecar(const std::filesystem::path& path, const SampleBatch& batch,
                         const Provenance& prov)
{
    nlohmann::json j;
    j["version"] = prov.tool_version;
    j["config_hash"] = prov.config_hash;
    j["kernel"] = batch.kernel_name;
    j["seed"] = batch.seed;
    j["n"] = batch.n();
    j["n_samples"] = batch.n_samples();
    j["rng"] = batch.rng_algorithm;
    j["jitter"] = batch.jitter;
    j["transform_chain"] = batch.transform_chain;
    j["extrapolated"] = batch.extrapolated;
    write_json(path, j);
}

void write_batch_csv(const std::filesystem::path& path, const SampleBatch& batch)
{
    auto f = open_out(path);
    f << "sample";
    for (int i = 0; i < batch.n(); ++i)
        f << ",x" << i;
    f << '\n';
    for (std::int64_t s = 0; s < batch.n_samples(); ++s)
    {
        f << s;
        for (int i = 0; i < batch.n(); ++i)
            f << ',' << format_double(batch.values(s, i));
        f << '\n';
    }
}

nlohmann::json rp_report_json(const RPReport& report, const Provenance& prov)
{
    nlohmann::json j;
    j["version"] = prov.tool_version;
    j["config_hash"] = prov.config_hash;
    switch (report.kind)
    {
        case RPKind::KernelTheta:
            j["kind"] = "kernel_theta";
            break;
        case RPKind::GaussianClosedForm:
            j["kind"] = "gaussian_closed_form";
            break;
        case RPKind::MonteCarlo:
            j["kind"] = "monte_carlo";
            break;
    }
    j["n"] = report.n;
    j["min_eigenvalue"] = report.min_eigenvalue;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    if (report.kind == RPKind::MonteCarlo)
    {
        j["stderr"] = report.min_eig_std_error;
        j["entry_stderr"] = report.entry_std_error;
        j["seed"] = report.seed;
    }
    if (!report.pass && report.witness.size() > 0)
    {
        std::vector<double> wr, wi;
        for (int i = 0; i < report.witness.size(); ++i)
        {
            wr.push_back(report.witness[i].real());
            wi.push_back(report.witness[i].imag());
        }
        j["witness_re"] = wr;
        j["witness_im"] = wi;
    }
    return j;
}

nlohmann::json entropy_report_json(const EntropyReport& report, const Provenance& prov)
{
    nlohmann::json j;
    j["version"] = prov.tool_version;
    j["config_hash"] = prov.config_hash;
    j["region"] = report.region;
    j["grid_step"] = report.grid_step;
    j["diameter"] = report.diameter;
    j["schedule"] = report.schedule;
    j["covering"] = report.covering;
    j["integral"] = report.integral;
    j["truncation_epsilon"] = report.truncation_epsilon;
    j["monotone"] = report.monotone;
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j)
{
    auto f = open_out(path);
    f << j.dump(2) << '\n';
}

}  // namespace ballfield::io
