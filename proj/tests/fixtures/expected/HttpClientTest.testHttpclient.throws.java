public void testHttpclient() throws ClientProtocolException {
    ...
    client.execute(); //act
    ...}
