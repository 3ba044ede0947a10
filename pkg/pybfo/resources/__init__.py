from .resource import ResourceSet, Resource, URI
from . import bfo
from . import json

# Register basic resource factory
ResourceSet.resource_factory = {'bfo': bfo.BfoResource,
                                'json': json.ReportResource,
                                '*': bfo.BfoResource}

__all__ = ['ResourceSet', 'Resource', 'URI']
