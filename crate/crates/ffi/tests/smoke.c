#include <stdio.h>
#include <string.h>

#include "swcalc.h"

int main(void) {
    SwcManifold *m = NULL;
    SwcStatus st = swc_manifold_from_expr_json("{\"op\":\"model\",\"name\":\"Zmg\",\"params\":{\"m\":3,\"g\":1}}", &m);
    if (st != SWC_STATUS_OK) {
        printf("eval failed: %s\n", swc_last_error());
        return 1;
    }
    SwcChars ch;
    if (swc_manifold_chars(m, &ch) != SWC_STATUS_OK) {
        return 1;
    }
    printf("chi=%lld c1sq=%lld\n", (long long)ch.chi, (long long)ch.c1_squared);

    char *sw = NULL;
    swc_manifold_sw_text(m, &sw);
    printf("%s\n", sw);
    swc_string_free(sw);

    SwcHomeo v;
    swc_homeo_compare(m, m, &v, NULL);
    swc_manifold_free(m);
    if (v != SWC_HOMEO_HOMEOMORPHIC) {
        return 1;
    }

    st = swc_manifold_from_expr_json("{\"op\":\"model\",\"name\":\"nope\"}", &m);
    if (st != SWC_STATUS_EVAL_ERROR || strlen(swc_last_error()) == 0) {
        return 1;
    }
    printf("version %s\n", swc_version());
    return 0;
}
