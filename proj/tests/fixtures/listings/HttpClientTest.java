package fixtures.http;

import org.junit.Test;

public class HttpClientTest {
    @Test//Suppressed Exception
    public void testHttpclient() {
        ...
        try { client.execute(); } //act
        catch (final ClientException e) {
            e.printStackTrace();}
        ...}
}
