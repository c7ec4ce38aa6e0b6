#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string_view>

#include "sparsedyn/evaluation.hpp"

namespace sparsedyn::harness {

inline constexpr std::string_view report_header = "step,time,n_s,sparsity_fraction,l2_error,linf_error,mean_re,mean_im";

void write_report_csv(std::ostream& out, const RunReport& report);

/// `x[,y],u` rows in grid order.
void write_field_csv(std::ostream& out, const SpatialField<double>& field);

/// Opens `path` for writing or throws Error.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace sparsedyn::harness
