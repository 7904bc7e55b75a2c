#ifndef GSHAPE_TESTS_SPECFUN_ORACLE_TABLE_HPP
#define GSHAPE_TESTS_SPECFUN_ORACLE_TABLE_HPP

// Reference values computed with 40-digit arithmetic:
// a, log(a) - psi(a), a^2 psi'(a) - a, for a = 10^k, k = -8(0.5)8.
namespace gshape::testing {

struct CompositeOracleRow { double a; double log_minus_digamma; double a_sq_trigamma_minus_a; };

inline constexpr CompositeOracleRow kCompositeOracle[] = {
    {1.0000000000000000e-8, 99999982.1565349045, 0.9999999900000001645},
    {3.1622776601683793e-8, 31622759.90951120875, 0.9999999683772250433},
    {1.0000000000000000e-7, 9999984.45911984945, 0.9999999000000164493},
    {3.1622776601683793e-7, 3162263.270580419599, 0.9999996837723984765},
    {1.0000000000000000e-6, 999986.7617034620044, 0.9999990000016449317},
    {3.1622776601683793e-6, 316215.6790092896412, 0.9999968377387890963},
    {1.0000000000000000e-5, 99989.06427375071084, 0.9999900001644910026},
    {3.1622776601683793e-5, 31612.99213241404115, 0.9999683788682563615},
    {0.00010000000000000000, 9991.366710811538152, 0.9999000164469368793},
    {0.00031622776601683793, 3154.795307954147975, 0.9996839366513975497},
    {0.0010000000000000000, 993.6678166528281634, 0.999001642533195869},
    {0.0031622776601683793, 311.0433291974486456, 0.9968540959791366971},
    {0.010000000000000000, 95.95571527188058313, 0.990162121352831322},
    {0.031622776601683793, 28.69526608114525778, 0.9699492534210825399},
    {0.10000000000000000, 8.121169847417031111, 0.9143329915079275882},
    {0.31622776601683793, 2.161925714656298042, 0.795283868980081471},
    {1.0000000000000000, 0.5772156649015328606, 0.6449340668482264365},
    {3.1622776601683793, 0.1663674948698221736, 0.5517171191571789278},
    {10.000000000000000, 0.05083250392732457637, 0.5166335681685746122},
    {31.622776601683793, 0.01589471330480599152, 0.505269409426265457},
    {100.00000000000000, 0.005008333250003967837, 0.5016666333357139525},
    {316.22776601683793, 0.001581972162584193634, 0.5005270452226097056},
    {1000.0000000000000, 0.000500083333325000004, 0.5001666666333333571},
    {3162.2776601683793, 0.0001581222163416689666, 0.5000527046266153805},
    {10000.000000000000, 0.0000500008333333325, 0.5000166666666333333},
    {31622.776601683793, 0.00001581147163417522166, 0.5000052704627658932},
    {100000.00000000000, 5.00000833333333325e-6, 0.5000016666666666333},
    {316227.76601683793, 1.581139663417522998e-6, 0.5000005270462766937},
    {1000000.0000000000, 5.000000833333333333e-7, 0.5000001666666666666},
    {3162277.6601683793, 1.581138913417522999e-7, 0.5000000527046276695},
    {10000000.000000000, 5.000000083333333333e-8, 0.5000000166666666667},
    {31622776.601683793, 1.581138838417522999e-8, 0.5000000052704627669},
    {100000000.00000000, 5.000000008333333333e-9, 0.5000000016666666667},
};

}  // namespace gshape::testing

#endif
