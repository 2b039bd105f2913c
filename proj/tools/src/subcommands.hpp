#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json_util.hpp"

namespace ale::cli {

std::vector<std::string> split(const std::string& text, char sep);

Json run_picard_cmd(const std::string& type, bool all);

Json run_akline_cmd(int k, double a, const std::string& c_text, const std::string& A_text,
                    const std::string& levels_csv);

Json run_nodal_cmd(int ell, const std::string& branch_csv,
                   const std::optional<std::string>& seed_file);

Json run_d4_cmd(const std::string& z_csv, const std::string& a_csv, const std::string& signs_csv,
                bool exhaustive, std::optional<int> solve_coeff);

Json run_metrics_cmd(const std::string& check, const std::optional<std::string>& grid_file,
                     double h);

}  // namespace ale::cli
