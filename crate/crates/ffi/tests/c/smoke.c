#include <stdio.h>
#include <string.h>

#include "orbvir.h"

static int check(OrbvirStatus s, const char *what) {
    if (s != ORBVIR_STATUS_OK) {
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)s, orbvir_last_error());
        return 1;
    }
    return 0;
}

int main(void) {
    OrbvirProfile *p = NULL;
    if (check(orbvir_profile_parse("N=3;n=3,0", &p), "parse")) return 1;

    uint64_t g = 0;
    if (check(orbvir_profile_genus(p, &g), "genus") || g != 1) return 1;

    uint32_t k[3] = {0, 0, 0};
    char *value = NULL;
    if (check(orbvir_invariant(p, ORBVIR_CASE_CURVE, k, 3, NULL, 0, "1/3,1/3,1/3", &value), "invariant")) return 1;
    int bad = strcmp(value, "1/3") != 0;
    printf("%s\n", value);
    orbvir_string_free(value);
    orbvir_profile_free(p);

    if (check(orbvir_profile_parse("N=2;n=5", &p), "parse")) return 1;
    if (orbvir_profile_genus(p, &g) != ORBVIR_STATUS_NOT_ADMISSIBLE) return 1;
    orbvir_profile_free(p);
    return bad;
}
