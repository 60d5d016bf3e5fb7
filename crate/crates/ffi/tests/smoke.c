#include <stdio.h>
#include "pple.h"

int main(void) {
    PpleParams p = pple_params_default(1024);
    PpleSim *sim = NULL;
    if (pple_sim_new(&p, 11, &sim) != PPLE_STATUS_OK) {
        fprintf(stderr, "new: %s\n", pple_last_error());
        return 1;
    }
    PpleResult r;
    PpleStatus s = pple_sim_run(sim, PPLE_STOP_SINGLE_ALIVE, 0, &r);
    PpleCensus c;
    pple_sim_census(sim, &c);
    pple_sim_free(sim);
    if (s != PPLE_STATUS_OK || c.active + c.passive != 1) {
        fprintf(stderr, "run: %d %s\n", (int)s, pple_last_error());
        return 1;
    }
    printf("%llu\n", (unsigned long long)r.single_alive_at);
    return 0;
}
