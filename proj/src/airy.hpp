#pragma once

namespace skdv {

struct AiryEval {
    double x;
    double ai;
    double kernel;
    double kernel_d2;
};

// Standard Airy function Ai. Returns 0 above x = 50; throws RangeError below -50.
double airy_ai(double x);

// A(x) = 3^{-1/3} Ai(3^{-1/3} x), which satisfies A'' = (x/3) A.
double airy_kernel(double x);
double airy_kernel_d2(double x);

AiryEval airy_eval(double x);

}  // namespace skdv
