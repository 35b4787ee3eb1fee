#pragma once

#include <fstream>

#include "steadytime/problem.hpp"

namespace steadytime::testing {

inline nlohmann::json load_fixture_json(const std::string& name) {
    std::ifstream in(std::string(STEADYTIME_FIXTURES) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return nlohmann::json::parse(in);
}

template <class T>
ProblemSpec<T> load_case(const std::string& name) {
    return problem_from_json<T>(load_fixture_json(name + ".json"));
}

template <class T> ProblemSpec<T> case_a() { return load_case<T>("case_a"); }
template <class T> ProblemSpec<T> case_b() { return load_case<T>("case_b"); }
template <class T> ProblemSpec<T> case_c() { return load_case<T>("case_c"); }

} // namespace steadytime::testing
