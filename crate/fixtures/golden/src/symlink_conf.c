#include "ngx_config.h"

static char *core_merge_conf(conf_t *cf, const char *name, const char *value)
{
    if (strcmp(name, "disable_symlinks") == 0) {
        cf->disable_symlinks = parse_mode(value);
        return OK;
    }
    return DECLINED;
}
