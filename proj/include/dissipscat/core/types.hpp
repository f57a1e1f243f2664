#ifndef DISSIPSCAT_CORE_TYPES_HPP
#define DISSIPSCAT_CORE_TYPES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace dissipscat {

using real = double;
using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return (&x)[i]; }
    double operator[](int i) const { return (&x)[i]; }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

// Module error types; names follow the operations that raise them.
struct DegenerateDirection : std::runtime_error { using std::runtime_error::runtime_error; };
struct NotMaximalDissipative : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonPositiveEpsilon : std::runtime_error { using std::runtime_error::runtime_error; };
struct OriginSingularity : std::runtime_error { using std::runtime_error::runtime_error; };
struct AllZeroRay : std::runtime_error { using std::runtime_error::runtime_error; };
struct SupportOverflow : std::runtime_error { using std::runtime_error::runtime_error; };
struct WrapAround : std::runtime_error { using std::runtime_error::runtime_error; };
struct InvalidSpec : std::runtime_error { using std::runtime_error::runtime_error; };
struct InstabilityDetected : std::runtime_error { using std::runtime_error::runtime_error; };
struct CFLViolation : std::runtime_error { using std::runtime_error::runtime_error; };
struct WindowTooShort : std::runtime_error { using std::runtime_error::runtime_error; };
struct NonMonotoneErrors : std::runtime_error { using std::runtime_error::runtime_error; };
struct TooFewDirections : std::runtime_error { using std::runtime_error::runtime_error; };
struct IncompleteTrace : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };
struct IoError : std::runtime_error { using std::runtime_error::runtime_error; };

} // namespace dissipscat

#endif
