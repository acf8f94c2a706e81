#include <stdio.h>
#include "extconvex.h"

int main(void) {
    ExcFunction *f = NULL;
    if (exc_function_from_json("{\"kind\":\"pl\",\"breaks\":[{\"x\":0,\"v\":0}],\"slopeL\":-1,\"slopeR\":1}", &f) != EXC_STATUS_OK)
        return 1;
    ExcExtReal v;
    if (exc_conjugate(f, EXC_DUAL_KIND_PROPER, 0.5, 0.0, &v) != EXC_STATUS_OK || v.kind != EXC_KIND_FINITE)
        return 2;
    printf("conj %g\n", v.value);
    exc_function_free(f);

    ExcExtReal top = {EXC_KIND_POS_INF, 0.0};
    exc_idif(top, top, &v);
    printf("idif %s\n", v.kind == EXC_KIND_NEG_INF ? "-inf" : "?");

    ExcFunction *g = NULL;
    ExcStatus s = exc_function_from_json("{", &g);
    printf("parse error %d\n", (int)s);
    if (exc_last_error() == NULL)
        return 3;
    return 0;
}
