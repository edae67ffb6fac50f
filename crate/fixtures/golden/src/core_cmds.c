#include "httpd.h"

static const command_rec core_cmds[] = {
    AP_INIT_TAKE1("AddDefaultCharset", set_add_default_charset, 0, OR_FILEINFO,
                  "The default charset must be a valid name"),
    AP_INIT_TAKE1("AcceptPathInfo", set_accept_path_info, 0, OR_FILEINFO,
                  "This directive accepts the values on, off, and default"),
    AP_INIT_FLAG("AllowEncodedSlashes", set_allow2f, 0, RSRC_CONF,
                 "whether encoded slashes are permitted in request URLs"),
    { NULL }
};
