#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lineint {

/// Which rule produced an IntegralResult.
enum class RuleLevel {
  kGK21,
  kGK43,
  kGK87,
  kAdaptive,
  kClosedForm,  ///< analytic branch, no quadrature
  kComposite,   ///< fixed composite rule (Simpson)
};

enum class QuadStatus {
  kConverged,
  kToleranceNotReached,  ///< QNG: the 87-point rule still failed the test
  kDepthCapReached,      ///< oracle: subdivision limit hit before tolerance
};

const char* to_string(RuleLevel level) noexcept;
const char* to_string(QuadStatus status) noexcept;

struct Tolerance {
  double eps_abs;
  double eps_rel;

  /// Throws std::invalid_argument for negative or doubly-zero tolerances.
  Tolerance(double abs, double rel);

  double target(double value) const noexcept {
    return std::max(eps_abs, eps_rel * std::fabs(value));
  }

  /// sqrt(DBL_EPSILON) for both, the default of the proposed method.
  static Tolerance sqrt_epsilon() noexcept;
  /// 1e-15 for both, the oracle default.
  static Tolerance oracle_default() noexcept;
};

struct IntegralResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  RuleLevel level = RuleLevel::kClosedForm;
  QuadStatus status = QuadStatus::kConverged;

  bool converged() const noexcept { return status == QuadStatus::kConverged; }
};

namespace detail {

// QUADPACK QNG nodes and weights on [-1, 1]. x1 are the Gauss 10-point
// abscissae, x2 the Kronrod extension to 21 points, x3 and x4 the further
// extensions to 43 and 87 points.
inline constexpr double kQngX1[5] = {
    0.973906528517171720077964012084452, 0.865063366688984510732096688423493,
    0.679409568299024406234327365114874, 0.433395394129247190799265943165784,
    0.148874338981631210884826001129720};
inline constexpr double kQngW10[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
inline constexpr double kQngX2[5] = {
    0.995657163025808080735527280689003, 0.930157491355708226001207180059508,
    0.780817726586416897063717578345042, 0.562757134668604683339000099272694,
    0.294392862701460198131126603103866};
inline constexpr double kQngW21a[5] = {
    0.032558162307964727478818972459390, 0.075039674810919952767043140916190,
    0.109387158802297641899210590325805, 0.134709217311473325928054001771707,
    0.147739104901338491374841515972068};
inline constexpr double kQngW21b[6] = {
    0.011694638867371874278064396062192, 0.054755896574351996031381300244580,
    0.093125454583697605535065465083366, 0.123491976262065851077958109831074,
    0.142775938577060080797094273138717, 0.149445554002916905664936468389821};
inline constexpr double kQngX3[11] = {
    0.999333360901932081394099323919911, 0.987433402908088869795961478381209,
    0.954807934814266299257919200290473, 0.900148695748328293625099494069092,
    0.825198314983114150847066732588520, 0.732148388989304982612354848755461,
    0.622847970537725238641159120344323, 0.499479574071056499952214885499755,
    0.364901661346580768043989548502644, 0.222254919776601296498260928066212,
    0.074650617461383322043914435796506};
inline constexpr double kQngW43a[10] = {
    0.016296734289666564924281974617663, 0.037522876120869501461613795898115,
    0.054694902058255442147212685465005, 0.067355414609478086075553166302174,
    0.073870199632393953432140695251367, 0.005768556059769796184184327908655,
    0.027371890593248842081276069289151, 0.046560826910428830743339154433824,
    0.061744995201442564496240336030883, 0.071387267268693397768559114425516};
inline constexpr double kQngW43b[12] = {
    0.001844477640212414100389106552965, 0.010798689585891651740465406741293,
    0.021895363867795428102523123075149, 0.032597463975345689443882222526137,
    0.042163137935191811847627924327955, 0.050741939600184577780189020092084,
    0.058379395542619248375475369330206, 0.064746404951445885544689259517511,
    0.069566197912356484528633315038405, 0.072824441471833208150939535192842,
    0.074507751014175118273571813842889, 0.074722147517403005594425168280423};
inline constexpr double kQngX4[22] = {
    0.999902977262729234490529830591582, 0.997989895986678745427496322365960,
    0.992175497860687222808523352251425, 0.981358163572712773571916941623894,
    0.965057623858384619128284110607926, 0.943167613133670596816416634507426,
    0.915806414685507209591826430720050, 0.883221657771316501372117548744163,
    0.845710748462415666605902011504855, 0.803557658035230982788739474980964,
    0.757005730685495558328942793432020, 0.706273209787321819824094274740840,
    0.651589466501177922534422205016736, 0.593223374057961088875273770349144,
    0.531493605970831932285268948562671, 0.466763623042022844871966781659270,
    0.399424847859218804732101665817923, 0.329874877106188288265053371824597,
    0.258503559202161551802280975429025, 0.185695396568346652015917141167606,
    0.111842213179907468172398359241362, 0.037352123394619870814998165437704};
inline constexpr double kQngW87a[21] = {
    0.008148377384149172900002878448190, 0.018761438201562822243935059003794,
    0.027347451050052286161582829741283, 0.033677707311637930046581056957588,
    0.036935099820427907614589586742499, 0.002884872430211530501334156248695,
    0.013685946022712701888950035273128, 0.023280413502888311123409291030404,
    0.030872497611713358675466394126442, 0.035693633639418770719351355457044,
    0.000915283345202241360843392549948, 0.005399280219300471367738743391053,
    0.010947679601118931134327826856808, 0.016298731696787335262665703223280,
    0.021081568889203835112433060188190, 0.025370969769253827243467999831710,
    0.029189697756475752501446154084920, 0.032373202467202789685788194889595,
    0.034783098950365142750781997949596, 0.036412220731351787562801163687577,
    0.037253875503047708539592001191226};
inline constexpr double kQngW87b[23] = {
    0.000274145563762072350016527092881, 0.001807124155057942948341311753254,
    0.004096869282759164864458070683480, 0.006758290051847378699816577897424,
    0.009549957672201646536053581325377, 0.012329447652244853694626639963780,
    0.015010447346388952376697286041943, 0.017548967986243191099665352925900,
    0.019938037786440888202278192730714, 0.022194935961012286796332102959499,
    0.024339147126000805470360647041454, 0.026374505414839207241503786552615,
    0.028286910788771200659968002987960, 0.030052581128092695322521110347341,
    0.031646751371439929404586051078883, 0.033050413419978503290785944862689,
    0.034255099704226061787082821046821, 0.035262412660156681033782717998428,
    0.036076989622888701185500318003895, 0.036698604498456094498018047441094,
    0.037120549269832576114119958413599, 0.037334228751935040321235449094698,
    0.037361073762679023410321241766599};

// QUADPACK error rescaling: sigma * min(1, (200 delta / sigma)^1.5), floored
// at 50 eps times the integral of |f|.
inline double rescale_error(double err, double result_abs, double result_asc) noexcept {
  err = std::fabs(err);
  if (result_asc != 0.0 && err != 0.0) {
    const double scale = std::pow(200.0 * err / result_asc, 1.5);
    err = scale < 1.0 ? result_asc * scale : result_asc;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (result_abs > tiny / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * result_abs);
  }
  return err;
}

}  // namespace detail

/// Non-adaptive Gauss-Kronrod integration (QUADPACK QNG): the 10/21-point
/// pair, then the 43- and 87-point extensions, stopping at the first rule
/// whose error estimate is <= max(eps_abs, eps_rel |value|). If even the
/// 87-point rule fails, the result carries kToleranceNotReached.
template <class F>
IntegralResult qng_1d(F&& f, double lo, double hi, Tolerance tol) {
  if (!(lo <= hi)) throw std::invalid_argument("qng_1d: require lo <= hi");
  using namespace detail;

  const double half = 0.5 * (hi - lo);
  const double abs_half = std::fabs(half);
  const double center = 0.5 * (hi + lo);
  const double f_center = f(center);

  double saved[21];
  double fv1[5], fv2[5], fv3[5], fv4[5];

  double res10 = 0.0;
  double res21 = kQngW21b[5] * f_center;
  double res_abs = kQngW21b[5] * std::fabs(f_center);
  for (int k = 0; k < 5; ++k) {
    const double x = half * kQngX1[k];
    const double f1 = f(center + x);
    const double f2 = f(center - x);
    const double fs = f1 + f2;
    res10 += kQngW10[k] * fs;
    res21 += kQngW21a[k] * fs;
    res_abs += kQngW21a[k] * (std::fabs(f1) + std::fabs(f2));
    saved[k] = fs;
    fv1[k] = f1;
    fv2[k] = f2;
  }
  for (int k = 0; k < 5; ++k) {
    const double x = half * kQngX2[k];
    const double f1 = f(center + x);
    const double f2 = f(center - x);
    const double fs = f1 + f2;
    res21 += kQngW21b[k] * fs;
    res_abs += kQngW21b[k] * (std::fabs(f1) + std::fabs(f2));
    saved[k + 5] = fs;
    fv3[k] = f1;
    fv4[k] = f2;
  }
  res_abs *= abs_half;
  const double mean = 0.5 * res21;
  double res_asc = kQngW21b[5] * std::fabs(f_center - mean);
  for (int k = 0; k < 5; ++k) {
    res_asc += kQngW21a[k] * (std::fabs(fv1[k] - mean) + std::fabs(fv2[k] - mean)) +
               kQngW21b[k] * (std::fabs(fv3[k] - mean) + std::fabs(fv4[k] - mean));
  }
  res_asc *= abs_half;

  IntegralResult out;
  out.value = res21 * half;
  out.abs_error = rescale_error((res21 - res10) * half, res_abs, res_asc);
  out.evaluations = 21;
  out.level = RuleLevel::kGK21;
  if (out.abs_error <= tol.target(out.value)) return out;

  double res43 = kQngW43b[11] * f_center;
  for (int k = 0; k < 10; ++k) res43 += saved[k] * kQngW43a[k];
  for (int k = 0; k < 11; ++k) {
    const double x = half * kQngX3[k];
    const double fs = f(center + x) + f(center - x);
    res43 += fs * kQngW43b[k];
    saved[k + 10] = fs;
  }
  out.abs_error = rescale_error((res43 - res21) * half, res_abs, res_asc);
  out.value = res43 * half;
  out.evaluations = 43;
  out.level = RuleLevel::kGK43;
  if (out.abs_error <= tol.target(out.value)) return out;

  double res87 = kQngW87b[22] * f_center;
  for (int k = 0; k < 21; ++k) res87 += saved[k] * kQngW87a[k];
  for (int k = 0; k < 22; ++k) {
    const double x = half * kQngX4[k];
    res87 += kQngW87b[k] * (f(center + x) + f(center - x));
  }
  out.abs_error = rescale_error((res87 - res43) * half, res_abs, res_asc);
  out.value = res87 * half;
  out.evaluations = 87;
  out.level = RuleLevel::kGK87;
  if (out.abs_error > tol.target(out.value)) out.status = QuadStatus::kToleranceNotReached;
  return out;
}

/// Composite Simpson tensor rule on [0,1]^2 with p subintervals per axis
/// (2p + 1 nodes per axis). f is called as f(t, s).
template <class F>
double simpson_2d(F&& f, int p) {
  if (p < 1) throw std::invalid_argument("simpson_2d: p must be >= 1");
  const int nodes = 2 * p + 1;
  const double h = 1.0 / (2.0 * p);
  auto weight = [nodes](int k) {
    if (k == 0 || k == nodes - 1) return 1.0;
    return (k % 2 == 1) ? 4.0 : 2.0;
  };
  double total = 0.0;
  for (int js = 0; js < nodes; ++js) {
    const double s = js * h;
    double row = 0.0;
    for (int it = 0; it < nodes; ++it) {
      row += weight(it) * f(it * h, s);
    }
    total += weight(js) * row;
  }
  return total * (h / 3.0) * (h / 3.0);
}

/// Axis-aligned integration box [t_lo, t_hi] x [s_lo, s_hi].
struct Box {
  double t_lo = 0.0;
  double t_hi = 1.0;
  double s_lo = 0.0;
  double s_hi = 1.0;
};

struct OracleOptions {
  /// The box starts as an initial_grid x initial_grid array of panels, so a
  /// narrow peak cannot hide between the nodes of a single panel.
  int initial_grid = 4;
  /// Maximum number of bisections along each axis for any panel.
  int max_depth = 50;
  /// Safety valve on the number of live panels.
  int max_panels = 200000;
};

/// Adaptive reference integrator over a box: a tensor-product 7/15-point
/// Gauss-Kronrod panel rule with global subdivision of the panel of largest
/// estimated error, until the summed estimate meets tol. Panels are split
/// into quadrants. Reaching max_depth or max_panels first yields
/// kDepthCapReached with the best value so far. f is called as f(t, s).
IntegralResult oracle_2d(const std::function<double(double, double)>& f, Tolerance tol,
                         const Box& box = {}, const OracleOptions& options = {});

}  // namespace lineint
