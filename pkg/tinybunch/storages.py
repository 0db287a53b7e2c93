"""
Contains the :class:`base class <tinybunch.storages.Storage>` for storages
and implementations.

The command line tool reads input documents and writes reports through the
JSON storage.
"""
import io
import json
import os
import warnings
from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

__all__ = ('Storage', 'JSONStorage', 'touch')


def touch(path: str, create_dirs: bool):
    """
    Create a file if it doesn't exist yet.

    :param path: The file to create.
    :param create_dirs: Whether to create all missing parent directories.
    """
    if create_dirs:
        base_dir = os.path.dirname(path)

        # Check if we need to create missing parent directories
        if base_dir and not os.path.exists(base_dir):
            os.makedirs(base_dir)

    # Create the file by opening it in 'a' mode which creates the file if it
    # does not exist yet but does not modify its contents
    with open(path, 'a'):
        pass


class Storage(ABC):
    """
    The abstract base class for all Storages.

    A Storage (de)serializes a JSON document and stores it in some place
    (memory, file on disk, ...).
    """

    @abstractmethod
    def read(self) -> Optional[Dict[str, Any]]:
        """
        Read the stored document.

        Any kind of deserialization should go here.

        Return ``None`` here to indicate that the storage is empty.
        """

        raise NotImplementedError('To be overridden!')

    @abstractmethod
    def write(self, data: Dict[str, Any]) -> None:
        """
        Replace the stored document.

        Any kind of serialization should go here.

        :param data: The document to store.
        """

        raise NotImplementedError('To be overridden!')

    def close(self) -> None:
        """
        Optional: Close open file handles, etc.
        """

        pass

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()


class JSONStorage(Storage):
    """
    Store the document in a JSON file.

    Keyword arguments are passed on to ``json.dumps``; documents written by
    the command line tool use ``sort_keys=True, indent=2`` so they are
    canonical.
    """

    def __init__(self, path: str, create_dirs=False, encoding=None,
                 access_mode='r+', **kwargs):
        """
        Create a new instance.

        Also creates the storage file, if it doesn't exist and the access mode
        is appropriate for writing.

        Note: Using an access mode other than `r` or `r+` will probably lead
        to data loss or data corruption!

        :param path: Where to store the JSON data.
        :param access_mode: mode in which the file is opened (r, r+)
        :type access_mode: str
        """

        super().__init__()

        self._mode = access_mode
        self.kwargs = kwargs

        if access_mode not in ('r', 'rb', 'r+', 'rb+'):
            warnings.warn(
                'Using an `access_mode` other than \'r\', \'rb\', \'r+\' '
                'or \'rb+\' can cause data loss or corruption'
            )

        # Create the file if it doesn't exist and creating is allowed by the
        # access mode
        if any([character in self._mode for character in ('+', 'w', 'a')]):
            touch(path, create_dirs=create_dirs)

        # Open the file for reading/writing
        self._handle = open(path, mode=self._mode, encoding=encoding)

    def close(self) -> None:
        self._handle.close()

    def read(self) -> Optional[Dict[str, Any]]:
        # Get the file size by moving the cursor to the file end and reading
        # its location
        self._handle.seek(0, os.SEEK_END)
        size = self._handle.tell()

        if not size:
            # File is empty, so we return ``None`` so the caller knows there
            # is nothing to read
            return None
        else:
            # Return the cursor to the beginning of the file
            self._handle.seek(0)

            # Load the JSON contents of the file
            return json.load(self._handle)

    def read_text(self) -> str:
        """
        The raw contents of the file.
        """
        self._handle.seek(0)
        return self._handle.read()

    def write(self, data: Dict[str, Any]):
        # Move the cursor to the beginning of the file just in case
        self._handle.seek(0)

        # Serialize the document
        serialized = json.dumps(data, **self.kwargs)

        # Write the serialized data to the file
        try:
            self._handle.write(serialized)
            if self.kwargs.get('indent') is not None:
                self._handle.write('\n')
        except io.UnsupportedOperation:
            raise IOError('Cannot write to the document. Access mode is "{0}"'
                          .format(self._mode))

        # Ensure the file has been written
        self._handle.flush()
        os.fsync(self._handle.fileno())

        # Remove data that is behind the new cursor in case the file has
        # gotten shorter
        self._handle.truncate()
