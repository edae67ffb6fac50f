#include "ngx_config.h"

static int check_cached(request_t *r, core_loc_conf_t *clcf)
{
    if (clcf->disable_symlinks != SYMLINKS_OFF) {
        ngx_log_error(LOG_EMERG, r->connection->log, 0,
                      "symbolic links must not be enabled for cached files");
        return -1;
    }
    return 0;
}
