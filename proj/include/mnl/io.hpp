#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "mnl/extremizers.hpp"
#include "mnl/norms.hpp"
#include "mnl/opnorm.hpp"

namespace mnl::io {

using nlohmann::json;

// {"M": int, "N": int, "entries": [[re, im], ...]} with n fastest.
json to_json(const CoefficientMatrix& A);
CoefficientMatrix matrix_from_json(const json& doc);

// {"Kx": int, "Ky": int, "samples": [[re, im], ...]} with k fastest.
json to_json(const GridFunction& f);
GridFunction grid_from_json(const json& doc);

json to_json(const MixedExponents& e);
json to_json(const ExtremizerReport& r);
json to_json(const BoundReport& r);

/// M,N,alpha,beta,gamma,delta,theta,phi_or_blank,upper,lower,searched,ratio_lower,ratio_searched
std::string csv_header();
std::string csv_row(const BoundReport& r);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

}  // namespace mnl::io
