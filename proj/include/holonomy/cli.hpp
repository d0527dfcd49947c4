#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "holonomy/group.hpp"

namespace hol {

struct JobSpec {
    std::string command;  // eval, color, check-ybe, check-moves, check-gauge, check-identities
    std::string diagram, coloring, bottom, out;
    std::string group = "s3";
    std::string system = "qsl2";
    std::string gauge_element;
    std::string side = "plus";
    std::size_t samples = 100;
    std::optional<double> tol;
    std::uint64_t seed = 1;
};

struct JobResult {
    int exit_code = 0;  // 0 pass, 1 check failure, 2 input error
    json report;
};

JobResult run(const JobSpec& spec);

}  // namespace hol
