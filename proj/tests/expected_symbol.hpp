#ifndef SYMMETROID_TESTS_EXPECTED_SYMBOL_HPP
#define SYMMETROID_TESTS_EXPECTED_SYMBOL_HPP

// The quaternion pair printed for the bundled real_obstruction.pencil, transcribed
// term by term in graded reverse lex order.

namespace expected {

inline constexpr const char* a1 =
    "-t0^2 - 2*t0*t1 + 7*t1^2 + 8*t1*t2 + 48*t1*t3 + 16*t2*t3 + 64*t3^2 + 8*t1*t4 + 16*t3*t4";

inline constexpr const char* a2 =
    "4*t1^2 + 8*t1*t2 + 4*t2^2 + 32*t1*t3 + 32*t2*t3 + 64*t3^2 + 8*t1*t4 + 8*t2*t4 + 32*t3*t4 + 4*t4^2";

inline constexpr const char* b1 =
    "-10*t0^2*t1 - 14*t0*t1^2 + 38*t1^3 + 10*t0*t1*t2 + 36*t1^2*t2 + 4*t0*t2^2 - 18*t1*t2^2 - 6*t0^2*t3"
    " - 12*t0*t1*t3 + 442*t1^2*t3 + 96*t1*t2*t3 - 40*t2^2*t3 + 928*t1*t3^2 + 96*t2*t3^2 + 384*t3^3"
    " + 20*t0*t1*t4 + 62*t1^2*t4 + 14*t0*t2*t4 - 30*t1*t2*t4 - 14*t2^2*t4 + 112*t1*t3*t4"
    " - 80*t2*t3*t4 + 96*t3^2*t4 + 6*t0*t4^2 - 28*t1*t4^2 - 30*t2*t4^2 - 80*t3*t4^2 - 18*t4^3";

inline constexpr const char* b2 =
    "-2*t0^2*t1 - 4*t0*t1^2 + 14*t1^3 - 2*t0^2*t2 - 4*t0*t1*t2 + 30*t1^2*t2 + 16*t1*t2^2 - 8*t0^2*t3"
    " - 16*t0*t1*t3 + 152*t1^2*t3 + 192*t1*t2*t3 + 32*t2^2*t3 + 512*t1*t3^2 + 256*t2*t3^2 + 512*t3^3"
    " - 2*t0^2*t4 - 4*t0*t1*t4 + 30*t1^2*t4 + 32*t1*t2*t4 + 192*t1*t3*t4 + 64*t2*t3*t4"
    " + 256*t3^2*t4 + 16*t1*t4^2 + 32*t3*t4^2";

} // namespace expected

#endif // SYMMETROID_TESTS_EXPECTED_SYMBOL_HPP
