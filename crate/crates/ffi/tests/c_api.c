#include <math.h>
#include <stdio.h>
#include <string.h>

#include "monopole.h"

int main(void) {
    MonopoleSession *s = monopole_session_new(7);
    MonopoleReport *r = NULL;
    const char *args[] = {"separate", "--spin", "half", "--lambda", "1", "--j", "1.5", "--golden", "dirac"};
    if (monopole_run(s, 9, args, &r) != MONOPOLE_STATUS_OK || !monopole_report_passed(r)) {
        fprintf(stderr, "separate failed: %s\n", monopole_session_last_error(s));
        return 1;
    }
    char *json = NULL;
    if (monopole_report_render(s, r, MONOPOLE_FORMAT_JSON, &json) != MONOPOLE_STATUS_OK || strstr(json, "\"passed\": true") == NULL) {
        return 2;
    }
    monopole_string_free(json);
    monopole_report_free(r);

    const char *bad[] = {"separate", "--spin", "half", "--lambda", "0.25", "--j", "1"};
    if (monopole_run(s, 7, bad, &r) != MONOPOLE_STATUS_QUANTIZATION || r != NULL || strlen(monopole_session_last_error(s)) == 0) {
        return 3;
    }
    double d = 0.0;
    if (monopole_wigner_d(2, 0, 0, 0.3, &d) != MONOPOLE_STATUS_OK || fabs(d - cos(0.3)) > 1e-14) {
        return 4;
    }
    monopole_session_free(s);
    printf("ok %s\n", monopole_version());
    return 0;
}
