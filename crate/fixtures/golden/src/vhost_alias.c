#include "httpd.h"

static const char *vhost_alias_set(cmd_parms *cmd, void *dummy,
                                   const char *map)
{
    const char *fallback = "none";

    if (!ap_os_is_path_absolute(cmd->pool, map)) {
        if (strcasecmp(map, fallback)) {
            return apr_psprintf(cmd->pool,
                                "format string must be an absolute path, or %s",
                                fallback);
        }
    }
    return NULL;
}
