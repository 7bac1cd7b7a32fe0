import os
import optparse
import logging
from logging.handlers import SysLogHandler
import configparser

from specrec.error import ConfigError

DEFAULT_CONFIG_FILE = './specrec.conf'

def get_config_path():
    if 'SPECREC_CONF' in os.environ:
        conf = os.environ['SPECREC_CONF']
    else:
        conf = DEFAULT_CONFIG_FILE

    return conf

def get_config(config_file, opts):
    """Load the config file and apply command line overrides.

    An explicitly named file must exist; the implicit default may be absent,
    in which case the built-in defaults are used."""
    if config_file is None:
        config_file = DEFAULT_CONFIG_FILE

    if not os.path.exists(config_file):
        if config_file != DEFAULT_CONFIG_FILE:
            raise ConfigError("config file not found: %s" % config_file)
        config_file = None

    try:
        conf = SpecRecConfig(config_file)
    except configparser.Error as e:
        raise ConfigError("unable to parse config: %s" % e)

    # the command line overrides the config file
    if opts is not None:
        if getattr(opts, 'jobs', None) is not None:
            conf.jobs = opts.jobs
        if getattr(opts, 'seed', None) is not None:
            conf.seed = opts.seed
        if getattr(opts, 'debug', False):
            conf.log_level = logging.DEBUG

    if conf.jobs < 1:
        raise ConfigError("invalid config: jobs must be at least 1")

    return conf

def get_opt_parser(default_config_file=None, usage=None):
    oparse = optparse.OptionParser(usage=usage)
    oparse.add_option("-d", "--debug", dest="debug", action="store_true",
            default=False, help="log at debug level")
    oparse.add_option("-f", "--config-file", dest="config_file",
            default=default_config_file)
    oparse.add_option("--json", dest="json", action="store_true",
            default=False, help="machine readable output")
    oparse.add_option("-j", "--jobs", dest="jobs", type="int", default=None,
            help="worker threads for per-vertex checks")
    oparse.add_option("--seed", dest="seed", type="int", default=None,
            help="seed for randomized batteries and scans")

    return oparse

class SpecRecConfig(object):
    def __init__(self, file):
        self.file = file

        self.battery_instances = 200
        self.gm_random_pairs = 10000
        self.gm_refine_bits = 64
        self.jobs = 1
        self.log_format = "%(name)s [%(process)d] %(message)s"
        self.log_level = None
        self.max_vertices = 64
        self.seed = 0
        self.syslog_facility = None

        if self.file is not None:
            self.read_config()
        self.convert_types()

    def read_config(self):
        """ read in config from INI-style file, requiring section header 'main'"""
        cfg = configparser.ConfigParser(interpolation=None)
        cfg.read(self.file)
        config_items = [x[0] for x in cfg.items("main")]
        for opt in (
                'battery_instances',
                'gm_random_pairs',
                'gm_refine_bits',
                'jobs',
                'log_format',
                'log_level',
                'max_vertices',
                'seed',
                'syslog_facility',
                ):
            if opt in config_items:
                setattr(self, opt, cfg.get("main", opt))

    def convert_types(self):
        """convert input from config file to appropriate types"""

        for opt in ('battery_instances', 'gm_random_pairs', 'gm_refine_bits',
                'jobs', 'max_vertices', 'seed'):
            try:
                setattr(self, opt, int(getattr(self, opt)))
            except ValueError:
                raise ConfigError("invalid config: %s must be an integer" % opt)

        if not 1 <= self.max_vertices <= 64:
            raise ConfigError("invalid config: max_vertices must be in 1..64")

        if self.syslog_facility is not None:
            if self.syslog_facility not in SysLogHandler.facility_names:
                raise ConfigError("invalid config: %s syslog facility is unknown" % self.syslog_facility)

            self.syslog_facility = SysLogHandler.facility_names[self.syslog_facility]

        if self.log_level is None:
            self.log_level = logging.INFO
        elif not isinstance(self.log_level, int):
            level = logging.getLevelName(self.log_level.upper())
            if not isinstance(level, int):
                raise ConfigError("invalid config: unknown log_level %s" %
                        self.log_level)
            self.log_level = level
