#include <stdio.h>
#include <string.h>
#include "tanlift.h"

int main(void) {
    TlSession *s = tl_session_new(7);
    char *report = NULL;
    TlStatus st = tl_session_eval(s, "chart M(x,y); poisson L on M = x^2 * @x^@y; bracket L x y;",
                                  TL_FORMAT_TEXT, &report);
    if (st != TL_STATUS_OK || report == NULL || strstr(report, "x^2") == NULL) {
        fprintf(stderr, "eval: status %d\n", (int)st);
        return 1;
    }
    fputs(report, stdout);
    tl_string_free(report);

    st = tl_session_eval(s, "scalar f on M = nope;", TL_FORMAT_TEXT, &report);
    if (st != TL_STATUS_NAME || strlen(tl_last_error()) == 0) {
        fprintf(stderr, "expected a name error, got %d\n", (int)st);
        return 1;
    }
    tl_string_free(report);
    tl_session_free(s);

    st = tl_verify("su2-example", 7, 0, TL_FORMAT_JSON, &report);
    if (st != TL_STATUS_OK) {
        fprintf(stderr, "verify: %s\n", tl_last_error());
        return 1;
    }
    tl_string_free(report);
    printf("tanlift %s ok\n", tl_version());
    return 0;
}
