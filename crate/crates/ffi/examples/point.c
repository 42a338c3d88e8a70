/* Evaluate one parameter point through the C ABI.
 *
 *   cargo build --release -p hyperrad-ffi
 *   cc -I crates/ffi/include crates/ffi/examples/point.c \
 *      target/release/libhyperrad_ffi.a -lm -lpthread -ldl -o point
 */
#include <math.h>
#include <stdio.h>

#include "hyperrad.h"

int main(void) {
    HrParams *params = hr_params_new(10.0, 1.0, 0.44, M_PI);
    if (!params) {
        fprintf(stderr, "%s\n", hr_last_error_message());
        return 1;
    }

    HrPoint *point = NULL;
    HrStatus status = hr_point_compute(params, 1e-6, 0, 1e-3, &point);
    if (status != HR_STATUS_OK) {
        fprintf(stderr, "error %d: %s\n", (int)status, hr_last_error_message());
        hr_params_free(params);
        return 1;
    }

    HrPointSummary s;
    hr_point_summary(point, &s);
    printf("R = %.6f (%s), n1 = %.6g, n2 = %.6g, g2 = %.4f, cutoff = %zu\n",
           s.r, hr_radiance_class_name(s.regime), s.n1, s.n2, s.g2, s.cutoff_used);

    hr_point_free(point);
    hr_params_free(params);
    return 0;
}
