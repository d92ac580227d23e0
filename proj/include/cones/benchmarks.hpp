#pragma once

#include <string>

#include "cones/belief.hpp"

namespace cones {

double sphere(const Vec& x);
double rosenbrock(const Vec& x);  // needs dim >= 2
double rastrigin(const Vec& x);
double lunacek(const Vec& x);  // bi-sphere variant; global minimum at 2.5*1_n

enum class BenchmarkId { sphere, rosenbrock, rastrigin, lunacek };

double evaluate(BenchmarkId id, const Vec& x);
std::size_t benchmark_min_dim(BenchmarkId id);
std::string benchmark_name(BenchmarkId id);
BenchmarkId benchmark_from_name(const std::string& name);

}  // namespace cones
