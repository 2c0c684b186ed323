"""Decorator for ensuring an error is raised if an edge list was written in a format this reader cannot parse."""

import functools
from packaging.version import InvalidVersion, Version


class FormatVersionException(Exception):
    """Names a new type of exception specific to incompatible file format versions."""


def requires_format_version(required_version):
    """Decorator for raising an error when the file's format version is older than required or of a newer major.

    The decorated method's object must expose the file's version string as format_version.
    """

    def decorator_version_check(func):
        @functools.wraps(func)
        def wrapper(self, *args, **kwargs):
            try:
                file_version = Version(self.format_version.split('-')[0])
            except InvalidVersion as ex:
                raise FormatVersionException(func.__name__ + ' cannot parse format version ' +
                                             repr(self.format_version) + '.') from ex
            required = Version(required_version)
            if required > file_version:
                raise FormatVersionException(func.__name__ + ' requires format version ' + str(required_version) +
                                             ' or later (' + str(file_version) + ' < ' + str(required_version) +
                                             '). Please regenerate the file.')
            if file_version.major > required.major:
                raise FormatVersionException(func.__name__ + ' cannot read format version ' + str(file_version) +
                                             ' (newer than ' + str(required.major) + '.x). Please update astopo.')

            return func(self, *args, **kwargs)

        return wrapper

    return decorator_version_check
