"""
    .. _pcmconfig-runconfig:

    **runconfig**
    -------------

    Contains class definition that stores the validated configuration of a
    model run
"""

from contextlib import contextmanager

import pcmmisc.miscutils as miscutils
from pcmconfig import cfgdefs
from pcmconfig.wcl import WCL
from comet import cometdefs
from comet import geometry as geo
from comet import pcm_cell
from comet import photonics
from comet import integrity
from comet import trace_synth
from comet.engine import TimingParams
from comet.exceptions import (ConfigSchemaError, DomainError, GeometryError, LevelTableSchemaError,
                              ModelError)
from cosmos.crossbar import CrossbarConfig


def _coerce(path, kind, value):
    """ Convert a configured value to its schema kind """
    try:
        if kind == cfgdefs.T_BOOL:
            return miscutils.convertBool(value)
        if kind == cfgdefs.T_INT:
            if isinstance(value, bool):
                raise ValueError('boolean given')
            if isinstance(value, float):
                if not value.is_integer():
                    raise ValueError('not an integer')
                return int(value)
            return int(str(value).strip(), 0)
        if kind == cfgdefs.T_FLOAT:
            if isinstance(value, bool):
                raise ValueError('boolean given')
            return float(value)
        if kind == cfgdefs.T_LIST:
            if isinstance(value, str):
                # WCL lists are comma separated
                return miscutils.fwsplit(value)
            if not isinstance(value, (list, tuple)):
                raise ValueError('a list is required')
            return list(value)
        if value is None or isinstance(value, (dict, list)):
            raise ValueError('a string is required')
        return str(value)
    except (ValueError, TypeError) as err:
        raise ConfigSchemaError(path, 'expected %s, got %r (%s)' % (kind, value, err))


class RunConfig(WCL):
    """ Validated configuration of a model run

        The defaults of cfgdefs.SCHEMA are overridden by the configuration
        file (JSON or WCL), which in turn is overridden by command line
        values.

        Parameters
        ----------
        args : dict, optional
            'config' names the configuration file; the keys of
            cfgdefs.CLI_OVERRIDES override single values when not None.

        Raises
        ------
        ConfigSchemaError
            Naming the dotted path of the first bad field.
    """

    ###########################################################################
    def __init__(self, args=None):
        WCL.__init__(self)
        args = args or {}
        self.update(cfgdefs.default_config())

        if args.get('config'):
            if miscutils.fwdebug_check(3, 'RUNCONFIG_DEBUG'):
                miscutils.fwdebug_print("Reading config: %s" % args['config'])
            try:
                userwcl = WCL.from_file(args['config'])
            except SyntaxError as err:
                raise ConfigSchemaError(args['config'], str(err))
            self._check_user(userwcl)
            self.update(userwcl)

        # command line values override the file
        for flag, key in cfgdefs.CLI_OVERRIDES.items():
            if args.get(flag) is not None:
                self.set(key, args[flag])

        self.validate()

    ###########################################################################
    @staticmethod
    def _check_user(userwcl):
        """ Reject a file without the current schema version or with
            unknown sections or keys
        """
        if cfgdefs.SCHEMA_VERSION_KEY not in userwcl:
            raise ConfigSchemaError(cfgdefs.SCHEMA_VERSION_KEY, 'required')
        version = _coerce(cfgdefs.SCHEMA_VERSION_KEY, cfgdefs.T_INT,
                          userwcl.get(cfgdefs.SCHEMA_VERSION_KEY))
        if version != cfgdefs.SCHEMA_VERSION:
            raise ConfigSchemaError(cfgdefs.SCHEMA_VERSION_KEY, 'version %d not supported (expected %d)' %
                                    (version, cfgdefs.SCHEMA_VERSION))

        for section, body in userwcl.items():
            if section == cfgdefs.SCHEMA_VERSION_KEY:
                continue
            if section not in cfgdefs.SECTIONS:
                raise ConfigSchemaError(section, 'unknown section')
            if not isinstance(body, dict):
                raise ConfigSchemaError(section, 'must be a section')
            for key in body:
                if '%s.%s' % (section, key) not in cfgdefs.SCHEMA:
                    raise ConfigSchemaError('%s.%s' % (section, key), 'unknown key')

    ###########################################################################
    def value(self, path):
        """ The value of a dotted key converted to its schema kind """
        kind, _ = cfgdefs.SCHEMA[path]
        return _coerce(path, kind, self.get(path))

    def section_values(self, section):
        """ All keys of a section as a dict of converted values """
        prefix = section + '.'
        return {key[len(prefix):]: self.value(key) for key in cfgdefs.SCHEMA if key.startswith(prefix)}

    ###########################################################################
    @contextmanager
    def _schema_section(self, section):
        """ Report model validation errors against the section's keys """
        try:
            yield
        except GeometryError as err:
            field = cfgdefs.GEOMETRY_INVARIANT_FIELDS.get(err.invariant, err.detail.split('=')[0])
            raise ConfigSchemaError(self._path(section, field), str(err))
        except DomainError as err:
            raise ConfigSchemaError(self._path(section, err.quantity), str(err))
        except LevelTableSchemaError as err:
            raise ConfigSchemaError('levels.overrides_file', str(err))
        except ModelError as err:
            raise ConfigSchemaError(section, str(err))

    @staticmethod
    def _path(section, field):
        path = '%s.%s' % (section, field)
        return path if path in cfgdefs.SCHEMA else section

    ###########################################################################
    def validate(self):
        """ Build every model object once so that bad values surface now """
        for key in cfgdefs.SCHEMA:
            self.value(key)
        for name, allowed in (('sim.arch', cometdefs.VALID_ARCHS),
                              ('output.format', cfgdefs.VALID_FORMATS),
                              ('trace.pattern', trace_synth.VALID_PATTERNS)):
            if self.value(name) not in allowed:
                raise ConfigSchemaError(name, '%r not in %s' % (self.value(name), allowed))
        for name in ('sim.timeline_ns', 'sim.nproc', 'trace.footprint_bytes', 'levels.guard_band',
                     'levels.overshoot'):
            if self.value(name) < 0:
                raise ConfigSchemaError(name, 'must be >= 0')

        g = self.geometry()
        self.timing()
        self.level_table()
        self.lut()
        self.trace_spec()
        self.crossbar()
        with self._schema_section(cfgdefs.SW_PATHS):
            self.optics().stack(g, self.reset_mode())

    ###########################################################################
    def geometry(self):
        """ Validated MemoryGeometry """
        vals = self.section_values(cfgdefs.SW_GEOMETRY)
        with self._schema_section(cfgdefs.SW_GEOMETRY):
            g = geo.validate_geometry(geo.MemoryGeometry(vals['banks'], vals['subarray_count'],
                                                         vals['subarray_rows'], vals['subarray_cols'],
                                                         vals['bits_per_cell'], vals['channels']))
            geo.cache_line_cells(g, vals['line_bytes'])
        return g

    def line_bytes(self):
        return self.value('geometry.line_bytes')

    def family(self):
        """ Equal-capacity geometries for b = 1, 2, 4 """
        g = self.geometry()
        with self._schema_section(cfgdefs.SW_GEOMETRY):
            return geo.geometry_family(self.value('geometry.capacity_bits'), g.banks, g.subarray_count,
                                       g.subarray_rows)

    def timing(self):
        with self._schema_section(cfgdefs.SW_TIMING):
            timing = TimingParams(**self.section_values(cfgdefs.SW_TIMING))
            timing.burst_length_for(self.line_bytes())
        return timing

    def losses(self):
        with self._schema_section(cfgdefs.SW_LOSSES):
            return photonics.LossParams(**self.section_values(cfgdefs.SW_LOSSES))

    def power(self):
        with self._schema_section(cfgdefs.SW_POWER):
            return photonics.PowerParams(**self.section_values(cfgdefs.SW_POWER))

    def reset_mode(self):
        mode = self.value('levels.reset_mode')
        if mode not in cometdefs.VALID_RESET_MODES:
            raise ConfigSchemaError('levels.reset_mode', '%r not in %s' % (mode, cometdefs.VALID_RESET_MODES))
        return mode

    def optics(self):
        """ PhotonicsParams, with the configured path if one is given """
        path = None
        with self._schema_section(cfgdefs.SW_PATHS):
            if self.value('paths.comet'):
                path = photonics.parse_path(self.value('paths.comet'))
        soa_gain = None
        if not self.value('lut.exact_soa_gain'):
            soa_gain = self.value('losses.intra_soa_gain_db')
        with self._schema_section(cfgdefs.SW_LUT):
            return photonics.PhotonicsParams(losses=self.losses(), power=self.power(), path=path,
                                             soa_interval=self.value('lut.soa_interval'),
                                             soa_gain_db=soa_gain,
                                             die_length_cm=self.value('paths.die_length_cm'),
                                             bends=self.value('paths.bends'))

    def level_table(self, bits=None):
        """ LevelTable of the configured (or given) bit density """
        bits = self.value('geometry.bits_per_cell') if bits is None else bits
        overrides = None
        filename = self.value('levels.overrides_file')
        with self._schema_section(cfgdefs.SW_LEVELS):
            if filename:
                overrides = pcm_cell.load_level_overrides(filename)
            return pcm_cell.build_level_table(bits, self.reset_mode(), overrides,
                                              reset_latency_ns=self.value('timing.erase_ns'),
                                              max_write_ns=self.value('timing.max_write_ns'))

    def decoder(self):
        """ Decoder settings of the readout check, as keyword arguments """
        return {'guard_band': self.value('levels.guard_band'),
                'overshoot': self.value('levels.overshoot')}

    def lut(self, bits=None):
        bits = self.value('geometry.bits_per_cell') if bits is None else bits
        with self._schema_section(cfgdefs.SW_LUT):
            return integrity.build_gain_lut(bits, self.value('geometry.subarray_rows'),
                                            self.value('lut.soa_interval'),
                                            self.value('losses.eo_mr_through_db'))

    def crossbar(self):
        """ CrossbarConfig of the baseline """
        vals = self.section_values(cfgdefs.SW_COSMOS)
        as_published = vals.pop('as_published')
        vals.pop('demo_steps')
        try:
            vals['levels'] = tuple(float(t) for t in vals['levels'])
        except (TypeError, ValueError):
            raise ConfigSchemaError('cosmos.levels', 'transmissions must be numbers')
        with self._schema_section(cfgdefs.SW_COSMOS):
            if as_published:
                vals.pop('levels')
                vals.pop('bits_per_cell')
                return CrossbarConfig.as_published(**vals)
            return CrossbarConfig(**vals)

    def trace_spec(self):
        vals = self.section_values(cfgdefs.SW_TRACE)
        vals.pop('file')
        if not vals['footprint_bytes']:
            vals['footprint_bytes'] = None
        vals['line_bytes'] = self.line_bytes()
        with self._schema_section(cfgdefs.SW_TRACE):
            return trace_synth.TraceSpec(**vals)
