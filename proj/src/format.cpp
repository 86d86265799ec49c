#include "resmat/format.hpp"

#include <cstdio>

namespace resmat {

std::string g9(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::MatrixXd& m) {
    os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << g9(m(r, c));
        }
        os << '\n';
    }
}

void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::Matrix<std::int64_t, Eigen::Dynamic,
                                      Eigen::Dynamic>& m) {
    os << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) os << ' ';
            os << m(r, c);
        }
        os << '\n';
    }
}

void write_vector(std::ostream& os, std::string_view name,
                  const Eigen::VectorXd& v) {
    os << "vector " << name << ' ' << v.size() << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << g9(v[i]);
    }
    os << '\n';
}

} // namespace resmat
