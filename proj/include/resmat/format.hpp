#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace resmat {

// Shortest %.9g rendering; -0 collapses to 0. Used everywhere text output
// must be byte-stable.
std::string g9(double v);

// "matrix <name> <rows> <cols>" header, then one row per line.
void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::MatrixXd& m);
void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::Matrix<std::int64_t, Eigen::Dynamic,
                                      Eigen::Dynamic>& m);

// "vector <name> <size>" header, then the entries on one line.
void write_vector(std::ostream& os, std::string_view name,
                  const Eigen::VectorXd& v);

} // namespace resmat
