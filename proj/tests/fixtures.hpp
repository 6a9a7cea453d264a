#ifndef SYMMETROID_TESTS_FIXTURES_HPP
#define SYMMETROID_TESTS_FIXTURES_HPP

#include <symmetroid/pencil.hpp>

#include <fstream>
#include <sstream>
#include <string>

#ifndef SYMMETROID_DATA_DIR
#error "SYMMETROID_DATA_DIR must point at the bundled pencil fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(SYMMETROID_DATA_DIR) + "/" + name; }

inline symmetroid::Pencil load(const std::string& name)
{
    std::ifstream in(path(name));
    std::ostringstream s;
    s << in.rdbuf();
    return symmetroid::parse_pencil(s.str());
}

inline symmetroid::Pencil real_obstruction_pencil() { return load("real_obstruction.pencil"); }
inline symmetroid::Pencil smooth_mod5_pencil() { return load("smooth_mod5.pencil"); }
inline symmetroid::Pencil padic_obstruction_pencil() { return load("padic_obstruction.pencil"); }

/// x0^2, ..., x4^2.
inline symmetroid::Pencil diagonal_pencil()
{
    return symmetroid::parse_pencil("x0^2\nx1^2\nx2^2\nx3^2\nx4^2\n");
}

} // namespace fixtures

#endif // SYMMETROID_TESTS_FIXTURES_HPP
