""" The resource module proposes all the concepts that are related to Resource
handling. A Resource represents a document that can be loaded from and saved
to a file. Many ``Resource`` can be contained in a ``ResourceSet``, which also
holds the base taxonomy the documents are elaborated against.
"""
import logging
from os import path
from abc import abstractmethod
from ..taxonomy import load_builtin_taxonomy


logger = logging.getLogger(__name__)


class ResourceSet(object):
    """Defines a Resource container.

    Resource can be created empty (using ``create_resource(...)``) or with data
    fetched from the actual file content (using ``get_resource(...)``).

    A :py:class:`ResourceSet` contains 3 handy properties:

    * ``resources`` which is a dictonary of the ResourceSet loaded resources
      (key is the normalized URI, value: the resource).
    * ``taxonomy`` which is the taxonomy every ``.bfo`` document of the set is
      elaborated against (the built-in taxonomy by default).
    * ``resource_factory`` which is a factory used by the ResourceSet to build
      the right Resource kind regarding the URI extension.

    .. seealso:: Resource
    """
    resource_factory = {}

    def __init__(self, taxonomy=None):
        self.resources = {}
        self.taxonomy = taxonomy or load_builtin_taxonomy()
        self.resource_factory = dict(ResourceSet.resource_factory)

    def create_resource(self, uri, **kwargs):
        """Creates a new Resource.

        The created ressource type depends on the used URI.

        :param uri: the resource URI
        :type uri: URI
        :param kwargs: keyword parameter passed to the Resource constructor
        :return: a new Resource
        :rtype: Resource

        .. seealso:: URI, Resource, BfoResource, ReportResource
        """
        if isinstance(uri, str):
            uri = URI(uri)
        try:
            resource = self.resource_factory[uri.extension](uri, **kwargs)
        except KeyError:
            resource = self.resource_factory['*'](uri, **kwargs)
        self.resources[uri.normalize()] = resource
        resource.resource_set = self
        return resource

    def remove_resource(self, resource):
        if not resource:
            return
        for key, value in dict(self.resources).items():
            if value is resource:
                del self.resources[key]

    def get_resource(self, uri, **kwargs):
        if isinstance(uri, str):
            uri = URI(uri)
        # We check first if the resource already exists in the ResourceSet
        if uri.normalize() in self.resources:
            return self.resources[uri.normalize()]
        # If not, we create a new resource
        resource = self.create_resource(uri, **kwargs)
        try:
            resource.load()
        except Exception:
            self.remove_resource(resource)
            raise
        logger.debug('resource %s loaded', uri.plain)
        return resource


class URI(object):
    def __init__(self, uri):
        if uri is None:
            raise TypeError('URI cannot be None')
        self.plain = uri
        self._split()
        self.__stream = None

    def _split(self):
        self._segments = self.plain.split(path.sep)
        self._last_segment = self._segments[-1]
        name = self._last_segment
        # 'case1.expected.json' -> 'json'
        self._extension = name.rsplit('.', 1)[1] if '.' in name else None

    @property
    def extension(self):
        return self._extension

    @property
    def segments(self):
        return self._segments

    @property
    def last_segment(self):
        return self._last_segment

    def create_instream(self):
        self.__stream = open(self.plain, 'rb')
        return self.__stream

    def close_stream(self):
        if self.__stream:
            self.__stream.close()
            self.__stream = None

    def create_outstream(self):
        self.__stream = open(self.plain, 'wb')
        return self.__stream

    def normalize(self):
        return path.abspath(self.plain)

    def __repr__(self):
        return f'URI({self.plain!r})'


class Resource(object):
    def __init__(self, uri=None):
        self._uri = uri
        self.resource_set = None
        self.contents = []

    @property
    def uri(self):
        return self._uri

    @uri.setter
    def uri(self, value):
        uri = URI(value) if isinstance(value, str) else value
        if self.resource_set:
            resources = self.resource_set.resources
            resources[uri.normalize()] = resources.pop(self._uri.normalize())
        self._uri = uri

    @property
    def taxonomy(self):
        if self.resource_set is None:
            return load_builtin_taxonomy()
        return self.resource_set.taxonomy

    def read_text(self):
        stream = self.uri.create_instream()
        try:
            return stream.read().decode('utf-8')
        finally:
            self.uri.close_stream()

    def write_text(self, text, output=None):
        uri = output or self.uri
        if not isinstance(uri, URI):
            uri = URI(uri)
        stream = uri.create_outstream()
        try:
            stream.write(text.encode('utf-8'))
            stream.flush()
        finally:
            uri.close_stream()

    @abstractmethod
    def load(self):
        raise NotImplementedError('load() should be implemented in its '
                                  'subclass')

    @abstractmethod
    def save(self, output=None):
        raise NotImplementedError('save() should be implemented in its '
                                  'subclass')

    def append(self, root):
        self.contents.append(root)

    def remove(self, root):
        self.contents.remove(root)

    def extend(self, values):
        append = self.append
        for x in values:
            append(x)
